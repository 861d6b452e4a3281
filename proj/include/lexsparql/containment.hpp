#ifndef LEXSPARQL_CONTAINMENT_HPP
#define LEXSPARQL_CONTAINMENT_HPP

#include "lexsparql/rdf.hpp"

namespace lexsparql {

struct Containment {
  bool contained = false;
  bool shape_mismatch = false;  // boolean vs bindings
};

// Booleans: equal truth values. Bindings: every gold row's set of values is
// a subset of the value set of some generated row. Variable names are
// ignored unless `name_aligned`, in which case (variable, value) pairs are
// compared instead. Rows are treated as sets, so multiplicity never matters.
Containment compare_results(const ResultSet& generated, const ResultSet& gold,
                            bool name_aligned = false);

inline bool contains_expected(const ResultSet& generated, const ResultSet& gold,
                              bool name_aligned = false) {
  return compare_results(generated, gold, name_aligned).contained;
}

}  // namespace lexsparql

#endif
