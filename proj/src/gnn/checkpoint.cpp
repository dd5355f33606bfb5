#include <cstring>
#include <fstream>

#include "pkgraph/error.hpp"
#include "pkgraph/train.hpp"

namespace pkgraph::gnn {
namespace {

constexpr char kMagic[8] = {'P', 'K', 'G', 'C', 'K', 'P', 'T', '1'};

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_str(std::ostream& out, const std::string& s) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

template <typename T>
T get(std::istream& in, const std::string& src) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw ValidationError(src + ": truncated checkpoint");
  return v;
}

std::string get_str(std::istream& in, const std::string& src) {
  const auto n = get<std::uint32_t>(in, src);
  if (n > 4096) throw ValidationError(src + ": implausible string length");
  std::string s(n, '\0');
  in.read(s.data(), n);
  if (!in) throw ValidationError(src + ": truncated checkpoint");
  return s;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const ModelParams& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out.write(kMagic, sizeof kMagic);
  put_str(out, params.tag());
  const auto& s = params.spec;
  put<std::uint8_t>(out, static_cast<std::uint8_t>(s.arch));
  put<std::uint8_t>(out, static_cast<std::uint8_t>(s.variant));
  for (std::uint64_t d : {s.in_dim, s.n_relations, s.n_bases, s.hidden1, s.hidden2})
    put<std::uint64_t>(out, d);
  const auto tensors = params.tensors();
  put<std::uint32_t>(out, static_cast<std::uint32_t>(tensors.size()));
  for (const auto& [name, m] : tensors) {
    put_str(out, name);
    put<std::uint64_t>(out, m->rows);
    put<std::uint64_t>(out, m->cols);
    out.write(reinterpret_cast<const char*>(m->data.data()),
              static_cast<std::streamsize>(m->size() * sizeof(double)));
  }
  if (!out) throw ValidationError("write failed for " + path.string());
}

ModelParams load_checkpoint(const std::filesystem::path& path) {
  const std::string src = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + src);
  char magic[sizeof kMagic];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw ValidationError(src + ": not a checkpoint");
  const std::string tag = get_str(in, src);
  ModelSpec spec;
  const auto arch = get<std::uint8_t>(in, src);
  if (arch > 1) throw ValidationError(src + ": bad architecture tag");
  spec.arch = static_cast<Arch>(arch);
  spec.variant = get<std::uint8_t>(in, src);
  spec.in_dim = get<std::uint64_t>(in, src);
  spec.n_relations = get<std::uint64_t>(in, src);
  spec.n_bases = get<std::uint64_t>(in, src);
  spec.hidden1 = get<std::uint64_t>(in, src);
  spec.hidden2 = get<std::uint64_t>(in, src);
  try {
    spec.validate();
  } catch (const ConfigError& e) {
    throw ValidationError(src + ": " + e.what());
  }

  ModelParams params = init_params(spec, 0);
  if (params.tag() != tag) throw ValidationError(src + ": architecture tag mismatch");
  auto tensors = params.tensors();
  if (get<std::uint32_t>(in, src) != tensors.size())
    throw ValidationError(src + ": tensor count mismatch");
  for (auto& [name, m] : tensors) {
    if (get_str(in, src) != name) throw ValidationError(src + ": expected tensor " + name);
    const auto rows = get<std::uint64_t>(in, src);
    const auto cols = get<std::uint64_t>(in, src);
    if (rows != m->rows || cols != m->cols)
      throw ValidationError(src + ": shape mismatch for " + name);
    in.read(reinterpret_cast<char*>(m->data.data()),
            static_cast<std::streamsize>(m->size() * sizeof(double)));
    if (!in) throw ValidationError(src + ": truncated checkpoint");
  }
  return params;
}

}  // namespace pkgraph::gnn
