#include <algorithm>
#include <set>

#include "pkgraph/error.hpp"
#include "pkgraph/pkg.hpp"

namespace pkgraph::pkg {
namespace {

bool is_control(unsigned char c) { return c < 0x20 || c == 0x7F; }

void check_iri(std::string_view iri) {
  for (unsigned char c : iri) {
    if (c <= 0x20 || c == 0x7F || c == '<' || c == '>' || c == '"' || c == '{' ||
        c == '}' || c == '|' || c == '^' || c == '`' || c == '\\')
      throw SerializationError("IRI contains a character N-Triples cannot carry: " +
                               std::string(iri));
  }
}

std::string escape_literal(std::string_view value) {
  std::string out;
  for (unsigned char c : value) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (is_control(c)) throw SerializationError("literal contains a control character");
        out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

std::string render(const Triple& t) {
  check_iri(t.subject);
  check_iri(t.predicate);
  std::string line = "<" + t.subject + "> <" + t.predicate + "> ";
  if (t.object.is_iri()) {
    check_iri(t.object.value);
    line += "<" + t.object.value + ">";
  } else {
    line += "\"" + escape_literal(t.object.value) + "\"";
    if (!t.object.datatype.empty()) {
      check_iri(t.object.datatype);
      line += "^^<" + t.object.datatype + ">";
    }
  }
  return line + " .";
}

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line_no) : s_(text), line_(line_no) {}

  Triple parse() {
    Triple t;
    t.subject = iri();
    space();
    t.predicate = iri();
    space();
    if (peek() == '<') {
      t.object = Term::iri(iri());
    } else if (peek() == '"') {
      t.object = literal();
    } else {
      fail("expected IRI or literal object");
    }
    skip_ws();
    if (peek() != '.') fail("expected '.'");
    ++pos_;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] != '#') fail("trailing characters after '.'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  void space() {
    const auto start = pos_;
    skip_ws();
    if (pos_ == start) fail("expected whitespace");
  }

  std::string iri() {
    if (peek() != '<') fail("expected '<'");
    const auto end = s_.find('>', pos_ + 1);
    if (end == std::string_view::npos) fail("unterminated IRI");
    std::string out(s_.substr(pos_ + 1, end - pos_ - 1));
    if (out.empty()) fail("empty IRI");
    for (unsigned char c : out)
      if (c <= 0x20 || c == '<' || c == '"' || c == '\\') fail("invalid character in IRI");
    pos_ = end + 1;
    return out;
  }

  Term literal() {
    ++pos_;
    std::string value;
    for (;;) {
      if (pos_ >= s_.size()) fail("unterminated literal");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        value.push_back(c);
        continue;
      }
      if (pos_ >= s_.size()) fail("dangling escape");
      switch (s_[pos_++]) {
        case '\\': value.push_back('\\'); break;
        case '"': value.push_back('"'); break;
        case 'n': value.push_back('\n'); break;
        case 'r': value.push_back('\r'); break;
        case 't': value.push_back('\t'); break;
        default: fail("unsupported escape");
      }
    }
    std::string datatype;
    if (s_.substr(pos_).starts_with("^^")) {
      pos_ += 2;
      datatype = iri();
    } else if (peek() == '@') {
      fail("language-tagged literals are not supported");
    }
    return Term::literal(std::move(value), std::move(datatype));
  }

  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_ntriples(const TripleGraph& graph, const hspo::HspoSchema&) {
  for (const auto& [node, meta] : graph.node_meta) {
    if (std::any_of(meta.description.begin(), meta.description.end(),
                    [](unsigned char c) { return is_control(c); }))
      throw SerializationError("description of " + node + " contains a control character");
  }
  std::vector<std::string> lines;
  lines.reserve(graph.triples.size());
  for (const auto& t : graph.triples) lines.push_back(render(t));
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

TripleGraph parse_ntriples(std::string_view text, const hspo::HspoSchema& schema) {
  TripleGraph g;
  std::set<Triple> triples;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  auto register_node = [&](const std::string& iri, std::size_t line) {
    const auto meta = meta_from_iri(schema, iri);
    if (!meta) throw ParseError(line, "not a graph node IRI: " + iri);
    g.node_meta[iri] = *meta;
    if (meta->facet == hspo::Facet::Patient) {
      if (!g.patient_node.empty() && g.patient_node != iri)
        throw ParseError(line, "second patient node " + iri);
      g.patient_node = iri;
    }
  };

  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.ends_with('\r')) line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;

    Triple t = LineParser(line.substr(first), line_no).parse();
    const bool known_predicate =
        t.predicate == schema.age_in_years() ||
        (t.predicate.starts_with(schema.vocabulary) &&
         hspo::relation_from_name(
             std::string_view(t.predicate).substr(schema.vocabulary.size())));
    if (!known_predicate) throw ParseError(line_no, "unknown predicate " + t.predicate);
    register_node(t.subject, line_no);
    if (t.object.is_iri()) register_node(t.object.value, line_no);
    triples.insert(std::move(t));
  }

  if (triples.empty()) throw ParseError(std::max<std::size_t>(line_no, 1), "no triples");
  if (g.patient_node.empty()) throw ParseError(line_no, "no patient node");
  g.triples.assign(triples.begin(), triples.end());
  return g;
}

}  // namespace pkgraph::pkg
