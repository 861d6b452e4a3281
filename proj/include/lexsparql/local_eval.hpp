#ifndef LEXSPARQL_LOCAL_EVAL_HPP
#define LEXSPARQL_LOCAL_EVAL_HPP

#include <optional>
#include <string_view>

#include "lexsparql/query.hpp"
#include "lexsparql/rdf.hpp"
#include "lexsparql/snapshot.hpp"

namespace lexsparql {

// Evaluates a parsed query against a snapshot. Results are deterministic:
// without ORDER BY, rows come out sorted by their serialized projection; with
// ORDER BY, ties are broken the same way.
ResultSet evaluate(const Snapshot& snapshot, const Query& query);

// parse_query + evaluate.
ResultSet execute_local(const Snapshot& snapshot, std::string_view sparql);

// ORDER BY term order: unbound < IRI < literal. Numeric literals compare by
// value, other literals by lexical form, then language, then datatype.
// Returns <0, 0, >0.
int order_compare(const std::optional<RdfTerm>& a, const std::optional<RdfTerm>& b);

bool is_numeric_literal(const RdfTerm& t);

}  // namespace lexsparql

#endif
