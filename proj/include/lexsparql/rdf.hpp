#ifndef LEXSPARQL_RDF_HPP
#define LEXSPARQL_RDF_HPP

#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

namespace lexsparql {

namespace iri {
inline constexpr std::string_view kWd = "http://www.wikidata.org/entity/";
inline constexpr std::string_view kWdt = "http://www.wikidata.org/prop/direct/";
inline constexpr std::string_view kWikibase = "http://wikiba.se/ontology#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kRdf =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kBd = "http://www.bigdata.com/rdf#";
inline constexpr std::string_view kOntolex = "http://www.w3.org/ns/lemon/ontolex#";
inline constexpr std::string_view kDct = "http://purl.org/dc/terms/";
inline constexpr std::string_view kSkos = "http://www.w3.org/2004/02/skos/core#";
}  // namespace iri

// Prefixes predeclared by the public Wikidata service.
const std::map<std::string, std::string, std::less<>>& default_prefixes();

// An IRI or a literal. Empty language / datatype mean "absent".
struct RdfTerm {
  enum class Kind { iri, literal };

  Kind kind = Kind::iri;
  std::string value;
  std::string language;
  std::string datatype;

  static RdfTerm make_iri(std::string v) {
    return {Kind::iri, std::move(v), {}, {}};
  }
  static RdfTerm make_literal(std::string v, std::string lang = {},
                              std::string dt = {}) {
    return {Kind::literal, std::move(v), std::move(lang), std::move(dt)};
  }
  static RdfTerm make_integer(long long v);
  static RdfTerm make_boolean(bool v);

  bool is_iri() const { return kind == Kind::iri; }
  bool is_literal() const { return kind == Kind::literal; }

  // N-Triples style: <iri>, "text"@lang, "text"^^<dt>.
  std::string to_ntriples() const;
  // Wikidata entity local name (Q5, L1-S1) for wd: IRIs, else the text after
  // the last '/' or '#'; literals yield their lexical value.
  std::string local_name() const;

  friend bool operator==(const RdfTerm& a, const RdfTerm& b) {
    return a.kind == b.kind && a.value == b.value && a.language == b.language &&
           a.datatype == b.datatype;
  }
  friend bool operator!=(const RdfTerm& a, const RdfTerm& b) { return !(a == b); }
  friend bool operator<(const RdfTerm& a, const RdfTerm& b) {
    return std::tie(a.kind, a.value, a.language, a.datatype) <
           std::tie(b.kind, b.value, b.language, b.datatype);
  }
};

// One solution row; unbound variables are absent.
using ResultRow = std::map<std::string, RdfTerm>;

struct ResultSet {
  enum class Kind { bindings, boolean };

  Kind kind = Kind::bindings;
  std::vector<std::string> variables;
  std::vector<ResultRow> rows;
  bool truth = false;

  static ResultSet boolean(bool v) {
    ResultSet r;
    r.kind = Kind::boolean;
    r.truth = v;
    return r;
  }

  bool is_boolean() const { return kind == Kind::boolean; }
  // Non-empty for bindings, true for booleans.
  bool has_answer() const { return is_boolean() ? truth : !rows.empty(); }
};

// Serialized row in variable order; used as the ORDER BY tie-breaker and for
// canonical comparisons.
std::string serialize_row(const ResultRow& row,
                          const std::vector<std::string>& variables);

// application/sparql-results+json
nlohmann::json to_sparql_json(const ResultSet& rs);
// Throws Error(parse) on a malformed document.
ResultSet from_sparql_json(const nlohmann::json& doc);
ResultSet parse_sparql_json(std::string_view body);

}  // namespace lexsparql

#endif
