#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pkgraph/hspo.hpp"
#include "pkgraph/pkg.hpp"

namespace pkgraph::graphx {

enum class Version : std::uint8_t { V1, V2, V3, V4 };
enum class Direction : std::uint8_t { Directed, Undirected };

struct GraphVersion {
  Version version = Version::V1;
  Direction direction = Direction::Directed;
  bool operator==(const GraphVersion&) const = default;
};

std::string_view name(Version v);
std::string_view name(Direction d);
std::optional<Version> version_from_name(std::string_view name);
std::optional<Direction> direction_from_name(std::string_view name);

// Relation types present in graphs of a version, in edge-list order.
std::vector<hspo::Relation> relation_set(Version v);

// Lowercase, split on anything that is not an ASCII letter or digit.
std::vector<std::string> tokenize(std::string_view text);

class Vocabulary {
 public:
  Vocabulary() = default;
  // Tokens are sorted and deduplicated.
  explicit Vocabulary(std::vector<std::string> tokens);

  // Throws ValidationError on an empty corpus.
  static Vocabulary build(const std::vector<pkg::TripleGraph>& corpus);

  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<std::size_t> index(std::string_view token) const;

  bool operator==(const Vocabulary&) const = default;

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Words describing the patient and the V4 group nodes; always in the vocabulary.
const std::vector<std::string>& descriptor_words();

// Token counts over the vocabulary. Out-of-vocabulary tokens are dropped and
// counted into *oov when given.
std::vector<std::uint32_t> bow_features(std::string_view description, const Vocabulary& vocab,
                                        std::size_t* oov = nullptr);

// Row-compressed nonnegative count matrix.
struct SparseCounts {
  std::size_t n_cols = 0;
  std::vector<std::uint32_t> row_ptr = {0};
  std::vector<std::uint32_t> cols;
  std::vector<std::uint32_t> values;

  std::size_t n_rows() const { return row_ptr.size() - 1; }
  void append_row(const std::vector<std::uint32_t>& dense);
  std::vector<std::uint32_t> dense_row(std::size_t r) const;

  bool operator==(const SparseCounts&) const = default;
};

struct EdgeList {
  std::vector<std::uint32_t> src;
  std::vector<std::uint32_t> dst;
  std::size_t size() const { return src.size(); }
  bool operator==(const EdgeList&) const = default;
};

struct NumericGraph {
  std::string id;
  GraphVersion version;
  std::size_t n_nodes = 0;
  std::vector<hspo::Relation> relations;  // relation_set(version.version)
  std::vector<EdgeList> edges;            // parallel to relations
  SparseCounts features;                  // n_nodes x vocab size
  std::uint32_t patient_index = 0;
  int label = 0;
  std::vector<hspo::Facet> node_facets;

  std::size_t vocab_size() const { return features.n_cols; }
  std::size_t edge_count() const;
  bool operator==(const NumericGraph&) const = default;
};

// Throws ValidationError describing the first broken structural invariant.
void validate(const NumericGraph& g);

// Node order: patient first, then leaves in IRI order, then (V4) group nodes.
// Edges point from leaves towards the patient; undirected graphs also carry
// every reverse edge under the same relation.
NumericGraph to_numeric(const pkg::TripleGraph& graph, GraphVersion version,
                        const Vocabulary& vocab, int label, std::size_t* oov = nullptr);

// Facet groups accepted by ablate().
inline const std::set<std::string> kAblationFacets = {"social", "medication", "procedures",
                                                      "diseases", "demographics"};

// Removes every node of the named facet groups with their incident edges and
// renumbers the remaining nodes in their original order. V4 group nodes stay.
NumericGraph ablate(const NumericGraph& graph, const std::set<std::string>& facets);

// Binary corpus container, see docs/formats.md.
void write_graphs(const std::filesystem::path& path, const std::vector<NumericGraph>& graphs);
std::vector<NumericGraph> read_graphs(const std::filesystem::path& path);

// One token per line.
void write_vocabulary(const std::filesystem::path& path, const Vocabulary& vocab);
Vocabulary read_vocabulary(const std::filesystem::path& path);

}  // namespace pkgraph::graphx
