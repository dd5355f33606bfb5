#include <cstring>
#include <fstream>

#include "pkgraph/error.hpp"
#include "pkgraph/graphx.hpp"

namespace pkgraph::graphx {
namespace {

constexpr char kMagic[8] = {'P', 'K', 'G', 'N', 'U', 'M', 'G', '1'};

// Little-endian fixed-width integers; the host is assumed little-endian.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  template <typename T>
  void put(T v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof v);
  }
  void put_vec(const std::vector<std::uint32_t>& v) {
    put<std::uint32_t>(static_cast<std::uint32_t>(v.size()));
    out_.write(reinterpret_cast<const char*>(v.data()),
               static_cast<std::streamsize>(v.size() * sizeof(std::uint32_t)));
  }
  void put_str(const std::string& s) {
    put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}
  template <typename T>
  T get() {
    T v;
    read(&v, sizeof v);
    return v;
  }
  std::vector<std::uint32_t> get_vec() {
    std::vector<std::uint32_t> v(checked_count());
    read(v.data(), v.size() * sizeof(std::uint32_t));
    return v;
  }
  std::string get_str() {
    std::string s(checked_count(), '\0');
    read(s.data(), s.size());
    return s;
  }
  void read(void* dst, std::size_t n) {
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n)
      throw ValidationError(source_ + ": truncated graph file");
  }

 private:
  std::size_t checked_count() {
    const auto n = get<std::uint32_t>();
    if (n > (1u << 28)) throw ValidationError(source_ + ": implausible array length");
    return n;
  }
  std::istream& in_;
  std::string source_;
};

}  // namespace

void write_graphs(const std::filesystem::path& path, const std::vector<NumericGraph>& graphs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  Writer w(out);
  out.write(kMagic, sizeof kMagic);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(graphs.size()));
  for (const auto& g : graphs) {
    w.put_str(g.id);
    w.put<std::uint8_t>(static_cast<std::uint8_t>(g.version.version));
    w.put<std::uint8_t>(static_cast<std::uint8_t>(g.version.direction));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(g.n_nodes));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(g.vocab_size()));
    w.put<std::int32_t>(g.label);
    w.put<std::uint32_t>(g.patient_index);
    for (auto f : g.node_facets) w.put<std::uint8_t>(static_cast<std::uint8_t>(f));
    w.put_vec(g.features.row_ptr);
    w.put_vec(g.features.cols);
    w.put_vec(g.features.values);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(g.relations.size()));
    for (std::size_t r = 0; r < g.relations.size(); ++r) {
      w.put<std::uint8_t>(static_cast<std::uint8_t>(g.relations[r]));
      w.put_vec(g.edges[r].src);
      w.put_vec(g.edges[r].dst);
    }
  }
  if (!out) throw ValidationError("write failed for " + path.string());
}

std::vector<NumericGraph> read_graphs(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  Reader r(in, path.string());
  char magic[sizeof kMagic];
  r.read(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw ValidationError(path.string() + ": not a numeric graph file");
  const auto count = r.get<std::uint32_t>();
  std::vector<NumericGraph> graphs;
  graphs.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    NumericGraph g;
    g.id = r.get_str();
    const auto version = r.get<std::uint8_t>();
    const auto direction = r.get<std::uint8_t>();
    if (version > 3 || direction > 1)
      throw ValidationError(path.string() + ": bad version tag in graph " + g.id);
    g.version = {static_cast<Version>(version), static_cast<Direction>(direction)};
    g.n_nodes = r.get<std::uint32_t>();
    g.features.n_cols = r.get<std::uint32_t>();
    g.label = r.get<std::int32_t>();
    g.patient_index = r.get<std::uint32_t>();
    for (std::size_t v = 0; v < g.n_nodes; ++v) {
      const auto f = r.get<std::uint8_t>();
      if (f > static_cast<std::uint8_t>(hspo::Facet::Patient))
        throw ValidationError(path.string() + ": bad facet tag in graph " + g.id);
      g.node_facets.push_back(static_cast<hspo::Facet>(f));
    }
    g.features.row_ptr = r.get_vec();
    g.features.cols = r.get_vec();
    g.features.values = r.get_vec();
    const auto n_rel = r.get<std::uint32_t>();
    for (std::uint32_t i = 0; i < n_rel; ++i) {
      const auto rel = r.get<std::uint8_t>();
      if (rel > static_cast<std::uint8_t>(hspo::Relation::Has))
        throw ValidationError(path.string() + ": bad relation tag in graph " + g.id);
      g.relations.push_back(static_cast<hspo::Relation>(rel));
      EdgeList e;
      e.src = r.get_vec();
      e.dst = r.get_vec();
      g.edges.push_back(std::move(e));
    }
    if (g.features.row_ptr.empty())
      throw ValidationError(path.string() + ": empty feature index in graph " + g.id);
    validate(g);
    graphs.push_back(std::move(g));
  }
  return graphs;
}

void write_vocabulary(const std::filesystem::path& path, const Vocabulary& vocab) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  for (const auto& t : vocab.tokens()) out << t << '\n';
}

Vocabulary read_vocabulary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) tokens.push_back(line);
  if (tokens.empty()) throw ValidationError(path.string() + ": empty vocabulary");
  return Vocabulary(std::move(tokens));
}

}  // namespace pkgraph::graphx
