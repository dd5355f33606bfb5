#pragma once

#include <cstdint>
#include <string_view>

namespace pkgraph {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Independent stream seeds derived from a base seed and a tag path, so that
// e.g. the RNG of (split 3, fold 2) does not depend on which other runs exist.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) noexcept {
  return mix64(base ^ mix64(fnv1a64(tag)));
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                                    std::uint64_t index) noexcept {
  return mix64(derive_seed(base, tag) + mix64(index + 1));
}

}  // namespace pkgraph
