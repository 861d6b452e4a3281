#ifndef LEXSPARQL_CHECKS_HPP
#define LEXSPARQL_CHECKS_HPP

#include <array>
#include <bitset>
#include <set>
#include <string>
#include <string_view>

#include "lexsparql/rational.hpp"

namespace lexsparql {

// Structural checks applied to generated SPARQL:
//   starts_with_form     first significant token is SELECT or ASK
//   select_has_variable  SELECT: a variable occurs before WHERE / '{'
//   ask_has_where        ASK: WHERE or '{' immediately follows
//   balanced_braces      every '{' has a matching '}'
//   no_values            the VALUES keyword does not occur
//   known_variable       one of the expected variable names occurs
//   known_qitems_only    no Q-item outside the known set occurs
enum class CheckId {
  starts_with_form = 0,
  select_has_variable,
  ask_has_where,
  balanced_braces,
  no_values,
  known_variable,
  known_qitems_only,
};

inline constexpr std::size_t kCheckCount = 7;

const char* to_string(CheckId id);
// Short label "C1".."C7".
std::string check_label(CheckId id);

enum class Outcome { pass, fail, not_applicable };

const char* to_string(Outcome o);

struct CheckProfile {
  std::string name = "appendix_c";
  std::bitset<kCheckCount> enabled = std::bitset<kCheckCount>().set();
  // Stored lowercase without the leading '?'.
  std::set<std::string> known_variables = {"lexeme", "lemma", "form",
                                           "sense", "qitem", "qitemlabel"};
  std::set<std::string> known_qitems;
  bool allow_prefix_prologue = false;

  bool is_enabled(CheckId id) const {
    return enabled.test(static_cast<std::size_t>(id));
  }

  // All seven checks; used for model output in both scenarios.
  static CheckProfile appendix_c();
  // Everything but the VALUES and Q-item checks; gold queries legitimately
  // carry VALUES clauses and constants.
  static CheckProfile gold_lint();
  // Throws Error(config) for an unknown name.
  static CheckProfile named(std::string_view name);
};

struct CheckReport {
  std::array<Outcome, kCheckCount> results{};
  int c_pass = 0;
  int c_all = 0;
  Rational ratio;

  Outcome operator[](CheckId id) const {
    return results[static_cast<std::size_t>(id)];
  }
};

// Never throws; any byte string yields a report.
CheckReport run_checks(std::string_view query, const CheckProfile& profile);

// c_pass / c_all, or 0 when nothing was checked.
Rational granularity_ratio(const CheckReport& report);

// Q-ids mentioned anywhere in the query (bare, prefixed or IRI tail).
std::set<std::string> extract_qitems(std::string_view query);

}  // namespace lexsparql

#endif
