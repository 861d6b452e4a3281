#ifndef LEXSPARQL_SNAPSHOT_HPP
#define LEXSPARQL_SNAPSHOT_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexsparql/rdf.hpp"

namespace lexsparql {

using TermId = std::uint32_t;
inline constexpr TermId kNoTerm = static_cast<TermId>(-1);

struct Triple {
  RdfTerm subject;
  RdfTerm predicate;
  RdfTerm object;
};

// Immutable in-memory triple set with SPO / POS / OSP indexes and an entity
// label table derived from rdfs:label triples. Safe to share across threads
// once constructed.
class Snapshot {
 public:
  Snapshot() = default;
  // Duplicate triples collapse. Throws Error(validation) if a subject or
  // predicate is a literal.
  explicit Snapshot(const std::vector<Triple>& triples);

  // Line-oriented triples "<s> <p> <o> ." where terms may also be prefixed
  // names (Wikidata prefixes are predeclared; "@prefix p: <iri> ." adds more)
  // and literals are written 'text'@lang, "text"@lang or "text"^^<dt>.
  // '#' starts a comment line. Throws Error(parse) with line locus.
  static Snapshot load(std::istream& in, std::string_view source = "snapshot");
  static Snapshot load_file(const std::string& path);

  std::size_t triple_count() const { return spo_.size(); }
  std::size_t term_count() const { return terms_.size(); }

  std::optional<TermId> find(const RdfTerm& t) const;
  const RdfTerm& term(TermId id) const { return terms_[id]; }

  using Ids = std::array<TermId, 3>;
  // Calls fn(s, p, o) for every triple matching the bound positions
  // (kNoTerm = wildcard).
  void match(TermId s, TermId p, TermId o,
             const std::function<void(TermId, TermId, TermId)>& fn) const;
  bool contains(TermId s, TermId p, TermId o) const;

  std::vector<Triple> triples() const;

  // Label of an entity in a language, from rdfs:label triples.
  std::optional<std::string> label(std::string_view entity_iri,
                                   std::string_view lang) const;

 private:
  TermId intern(const RdfTerm& t);

  std::vector<RdfTerm> terms_;
  std::unordered_map<std::string, TermId> index_;
  std::vector<Ids> spo_;  // sorted (s,p,o)
  std::vector<Ids> pos_;  // sorted (p,o,s)
  std::vector<Ids> osp_;  // sorted (o,s,p)
  std::unordered_map<std::string, std::string> labels_;  // iri \t lang -> text
};

}  // namespace lexsparql

#endif
