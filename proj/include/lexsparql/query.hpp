#ifndef LEXSPARQL_QUERY_HPP
#define LEXSPARQL_QUERY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexsparql/rdf.hpp"
#include "lexsparql/tokenizer.hpp"

namespace lexsparql {

using PrefixMap = std::map<std::string, std::string, std::less<>>;

// Parsed form of the SPARQL subset the embedded evaluator understands:
// basic graph patterns (with ';' and ',' abbreviations), VALUES, FILTER,
// BIND, OPTIONAL, nested groups, the Wikidata label service, SELECT
// [DISTINCT] / ASK, ORDER BY, LIMIT and OFFSET.

struct PatternTerm {
  bool is_var = false;
  std::string var;  // without '?'
  RdfTerm term;

  static PatternTerm variable(std::string name) {
    PatternTerm t;
    t.is_var = true;
    t.var = std::move(name);
    return t;
  }
  static PatternTerm constant(RdfTerm term) {
    PatternTerm t;
    t.term = std::move(term);
    return t;
  }
};

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Op {
    variable,
    constant,
    logical_or,
    logical_and,
    logical_not,
    eq,
    ne,
    lt,
    gt,
    le,
    ge,
    add,
    sub,
    mul,
    div,
    negate,
    call,  // builtin function, name upper-cased
  };

  Op op = Op::constant;
  std::string name;  // variable name or function name
  RdfTerm value;     // constant
  std::vector<ExprPtr> args;
};

struct GroupPattern;

struct ValuesBlock {
  std::vector<std::string> variables;
  // nullopt = UNDEF
  std::vector<std::vector<std::optional<RdfTerm>>> rows;
};

struct GroupElement {
  enum class Kind { triples, filter, optional, group, values, bind };

  Kind kind = Kind::triples;
  std::vector<TriplePattern> triples;
  ExprPtr expr;                         // filter, bind
  std::string var;                      // bind target
  std::shared_ptr<GroupPattern> group;  // optional, group
  ValuesBlock values;
};

struct GroupPattern {
  std::vector<GroupElement> elements;
};

struct OrderKey {
  ExprPtr expr;
  bool descending = false;
};

struct Query {
  enum class Form { select, ask };

  Form form = Form::select;
  bool distinct = false;
  bool select_all = false;
  std::vector<std::string> projection;
  GroupPattern where;
  std::vector<OrderKey> order;
  std::optional<long long> limit;
  std::optional<long long> offset;

  bool label_service = false;
  std::vector<std::string> label_languages;
  // Explicit "?x rdfs:label ?y" pairs inside the label service: y -> x.
  std::map<std::string, std::string> explicit_labels;

  // Every variable mentioned anywhere, in first-appearance order.
  std::vector<std::string> variables;
};

// Throws Error(parse) for malformed text and UnsupportedFeature for valid
// SPARQL outside the subset.
Query parse_query(std::string_view text);

// Reads one RDF term (IRI, prefixed name, literal with optional language tag
// or datatype, number, boolean) starting at tokens[i]; advances i. Returns
// false without consuming if tokens[i] does not start a term.
bool read_term(const std::vector<Token>& tokens, std::size_t& i,
               const PrefixMap& prefixes, RdfTerm& out);

}  // namespace lexsparql

#endif
