#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "lexsparql/error.hpp"
#include "lexsparql/local_eval.hpp"
#include "lexsparql/query.hpp"
#include "lexsparql/snapshot.hpp"
#include "support.hpp"

using namespace lexsparql;

namespace {

Snapshot tiny() {
  std::istringstream in(R"(# toy lexemes
wd:L1 wikibase:lemma "Apfel"@de .
wd:L1 dct:language wd:Q188 .
wd:L1 wdt:P5185 wd:Q499327 .
wd:L1 ontolex:lexicalForm wd:L1-F1 .
wd:L1-F1 ontolex:representation "Äpfel"@de .
wd:L2 wikibase:lemma "Katze"@de .
wd:L2 dct:language wd:Q188 .
wd:L2 wdt:P5185 wd:Q1775415 .
wd:L3 wikibase:lemma "cat"@en .
wd:L3 dct:language wd:Q1860 .
wd:Q499327 rdfs:label "masculine"@en .
wd:Q1775415 rdfs:label "feminine"@en .
wd:Q1775415 rdfs:label "Femininum"@de .
)");
  return Snapshot::load(in, "tiny");
}

std::vector<std::string> column(const ResultSet& rs, const std::string& var) {
  std::vector<std::string> out;
  for (const auto& row : rs.rows) {
    auto it = row.find(var);
    out.push_back(it == row.end() ? "UNDEF" : it->second.value);
  }
  return out;
}

}  // namespace

TEST(Snapshot, LoadAndIndex) {
  Snapshot s = tiny();
  EXPECT_EQ(s.triple_count(), 13u);
  EXPECT_EQ(s.label(std::string(iri::kWd) + "Q1775415", "de"), "Femininum");
  EXPECT_FALSE(s.label(std::string(iri::kWd) + "Q188", "en").has_value());
  std::istringstream bad("wd:L1 wikibase:lemma .\n");
  EXPECT_THROW(Snapshot::load(bad), Error);
}

TEST(LocalEval, ApfelGenderWithLabels) {
  ResultSet rs = execute_local(tiny(), testsupport::kApfelGenderQuery);
  ASSERT_EQ(rs.rows.size(), 1u);
  EXPECT_EQ(rs.variables,
            (std::vector<std::string>{"lexeme", "qitem", "lemma", "qitemLabel"}));
  EXPECT_EQ(rs.rows[0].at("qitemLabel").value, "masculine");
  EXPECT_EQ(rs.rows[0].at("lemma").language, "de");
}

TEST(LocalEval, AskAndFilters) {
  Snapshot s = tiny();
  EXPECT_TRUE(execute_local(s, "ASK { wd:L1 wdt:P5185 wd:Q499327 }").truth);
  EXPECT_FALSE(execute_local(s, "ASK WHERE { wd:L2 wdt:P5185 wd:Q499327 }").truth);
  auto rs = execute_local(
      s, "SELECT ?lemma WHERE { ?l wikibase:lemma ?lemma FILTER(LANG(?lemma) = 'de') }");
  EXPECT_EQ(column(rs, "lemma"), (std::vector<std::string>{"Apfel", "Katze"}));
  rs = execute_local(s, "SELECT ?l WHERE { ?l wikibase:lemma ?x FILTER(REGEX(?x, '^K')) }");
  EXPECT_EQ(rs.rows.size(), 1u);
  rs = execute_local(s, "SELECT ?l WHERE { ?l wikibase:lemma ?x FILTER(STRLEN(?x) > 3) }");
  EXPECT_EQ(rs.rows.size(), 2u);
}

TEST(LocalEval, OptionalBindValuesOrderLimit) {
  Snapshot s = tiny();
  auto rs = execute_local(s,
                          "SELECT ?lemma ?g WHERE { ?l wikibase:lemma ?lemma . "
                          "OPTIONAL { ?l wdt:P5185 ?g } } ORDER BY ?lemma");
  EXPECT_EQ(column(rs, "lemma"), (std::vector<std::string>{"Apfel", "Katze", "cat"}));
  EXPECT_EQ(column(rs, "g").back(), "UNDEF");
  rs = execute_local(s,
                     "SELECT ?l ?n WHERE { ?l wikibase:lemma ?x BIND(STRLEN(?x) AS ?n) } "
                     "ORDER BY DESC(?n) LIMIT 1");
  ASSERT_EQ(rs.rows.size(), 1u);
  EXPECT_EQ(rs.rows[0].at("n").value, "5");
  rs = execute_local(s, "SELECT ?l WHERE { VALUES ?x {'cat'@en 'Katze'@de} ?l wikibase:lemma ?x }");
  EXPECT_EQ(rs.rows.size(), 2u);
  rs = execute_local(s, "SELECT DISTINCT ?lang WHERE { ?l dct:language ?lang } OFFSET 1");
  EXPECT_EQ(rs.rows.size(), 1u);
}

TEST(LocalEval, UnsupportedSyntaxIsReported) {
  Snapshot s = tiny();
  EXPECT_THROW(execute_local(s, "SELECT (COUNT(?l) AS ?n) WHERE { ?l ?p ?o } GROUP BY ?p"), Error);
  EXPECT_THROW(execute_local(s, "CONSTRUCT { ?s ?p ?o } WHERE { ?s ?p ?o }"), Error);
  EXPECT_THROW(execute_local(s, "SELECT ?x WHERE { ?x ?p "), Error);
}

TEST(LocalEval, OrderCompare) {
  auto i = RdfTerm::make_iri("urn:a");
  auto two = RdfTerm::make_integer(2);
  auto ten = RdfTerm::make_integer(10);
  EXPECT_LT(order_compare(std::nullopt, i), 0);
  EXPECT_LT(order_compare(i, two), 0);
  EXPECT_LT(order_compare(two, ten), 0);  // numeric, not lexical
  EXPECT_EQ(order_compare(ten, ten), 0);
  EXPECT_TRUE(is_numeric_literal(ten));
}

TEST(LocalEval, AgreesWithBruteForceOnRandomQueries) {
  std::mt19937_64 rng(99);
  for (int g = 0; g < 10; ++g) {
    auto graph = testsupport::random_graph(rng, 120);
    Snapshot snap(graph);
    for (int i = 0; i < 10; ++i) {
      auto q = testsupport::random_query(rng, graph);
      EXPECT_EQ(testsupport::result_rows(execute_local(snap, q.to_sparql()), q.projection),
                testsupport::brute_force_rows(graph, q))
          << q.to_sparql();
    }
  }
}
