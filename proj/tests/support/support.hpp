#ifndef LEXSPARQL_TEST_SUPPORT_HPP
#define LEXSPARQL_TEST_SUPPORT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lexsparql/checks.hpp"
#include "lexsparql/rdf.hpp"
#include "lexsparql/snapshot.hpp"

namespace testsupport {

std::string data_dir();
std::string fixtures_dir();
std::string read_file(const std::string& path);

// Fresh empty directory under the system temp dir.
std::string temp_dir(const std::string& tag);

// Gender of German "Apfel", with the 11-space continuation indent.
extern const char* const kApfelGenderQuery;
// Two-example few-shot prompt for the gender template (no trailing newline).
extern const char* const kFewShotPrompt;

// Collapses every whitespace run to one space and trims both ends.
std::string normalize_ws(const std::string& s);

// Hand-computed expectations for one query under the appendix_c profile.
struct CheckCase {
  std::string name;
  std::string query;
  std::vector<std::string> known_qitems;
  // One of 'P', 'F', '-' (not applicable) per check, C1..C7.
  std::string expected;
  std::int64_t c_pass;
  std::int64_t c_all;
};
const std::vector<CheckCase>& curated_check_cases();
lexsparql::Outcome outcome_of(char c);

// ---- random graphs and queries for the evaluator oracle -------------------

struct GenTerm {
  bool is_var = false;
  std::string var;
  lexsparql::RdfTerm term;
};

struct GenTriple {
  GenTerm s, p, o;
};

struct GenFilter {
  enum class Kind { eq_const, ne_vars, strstarts, lang_eq, is_iri };
  Kind kind = Kind::eq_const;
  std::string var, var2;
  lexsparql::RdfTerm term;
  std::string text;
};

struct GenQuery {
  bool ask = false;
  bool distinct = false;
  std::vector<std::string> projection;
  std::vector<GenTriple> required;
  std::vector<GenTriple> optional;
  std::vector<GenFilter> filters;
  std::optional<std::pair<std::string, std::vector<lexsparql::RdfTerm>>> values;

  std::string to_sparql() const;
};

std::vector<lexsparql::Triple> random_graph(std::mt19937_64& rng, std::size_t max_triples);
GenQuery random_query(std::mt19937_64& rng, const std::vector<lexsparql::Triple>& graph);

// Rows of `q` over `graph` by enumerating every assignment of the query
// variables to graph terms; each row serialized, sorted (bag semantics
// unless DISTINCT). An ASK yields {"true"} or {"false"}.
std::vector<std::string> brute_force_rows(const std::vector<lexsparql::Triple>& graph,
                                          const GenQuery& q);
// Same serialization applied to a ResultSet.
std::vector<std::string> result_rows(const lexsparql::ResultSet& rs,
                                     const std::vector<std::string>& projection);

// ---- containment ------------------------------------------------------------

// Direct reading of the rule: each gold row's value set is a subset of some
// generated row's value set (or, name-aligned, its (var, value) pairs).
bool brute_force_contains(const lexsparql::ResultSet& generated,
                          const lexsparql::ResultSet& gold, bool name_aligned);

lexsparql::ResultSet random_result_set(std::mt19937_64& rng, std::size_t max_rows,
                                       std::size_t max_vars, std::size_t value_pool);

}  // namespace testsupport

#endif
