#include <gtest/gtest.h>

#include "lexsparql/checks.hpp"
#include "lexsparql/error.hpp"
#include "support.hpp"

using namespace lexsparql;

class CuratedChecks : public ::testing::TestWithParam<testsupport::CheckCase> {};

TEST_P(CuratedChecks, MatchHandComputedOutcomes) {
  const auto& c = GetParam();
  CheckProfile p = CheckProfile::appendix_c();
  p.known_qitems.insert(c.known_qitems.begin(), c.known_qitems.end());
  CheckReport r = run_checks(c.query, p);
  for (std::size_t i = 0; i < kCheckCount; ++i)
    EXPECT_EQ(r.results[i], testsupport::outcome_of(c.expected[i])) << "C" << i + 1;
  EXPECT_EQ(r.c_pass, c.c_pass);
  EXPECT_EQ(r.c_all, c.c_all);
  EXPECT_EQ(r.ratio, Rational(c.c_pass, c.c_all));
}

INSTANTIATE_TEST_SUITE_P(Curated, CuratedChecks,
                         ::testing::ValuesIn(testsupport::curated_check_cases()),
                         [](const auto& info) { return info.param.name; });

TEST(Checks, GoldLintSkipsValuesAndQitems) {
  CheckReport r = run_checks(testsupport::kApfelGenderQuery, CheckProfile::gold_lint());
  EXPECT_EQ(r[CheckId::no_values], Outcome::not_applicable);
  EXPECT_EQ(r[CheckId::known_qitems_only], Outcome::not_applicable);
  EXPECT_EQ(r.c_all, 4);
  EXPECT_EQ(r.c_pass, 4);
}

TEST(Checks, PrefixPrologueOptIn) {
  CheckProfile p;
  p.allow_prefix_prologue = true;
  p.known_qitems = {"Q5"};
  CheckReport r = run_checks(
      "PREFIX wd: <http://www.wikidata.org/entity/>\nSELECT ?lexeme WHERE { ?lexeme ?p wd:Q5 }", p);
  EXPECT_EQ(r[CheckId::starts_with_form], Outcome::pass);
  EXPECT_EQ(r.ratio, Rational(1));
}

TEST(Checks, NothingEnabledGivesZero) {
  CheckProfile p;
  p.enabled.reset();
  CheckReport r = run_checks("SELECT ?x WHERE {}", p);
  EXPECT_EQ(r.c_all, 0);
  EXPECT_EQ(r.ratio, Rational(0));
}

TEST(Checks, NamedProfiles) {
  EXPECT_EQ(CheckProfile::named("appendix_c").enabled.count(), 7u);
  EXPECT_EQ(CheckProfile::named("gold_lint").enabled.count(), 5u);
  EXPECT_THROW(CheckProfile::named("strict"), Error);
  EXPECT_EQ(check_label(CheckId::known_qitems_only), "C7");
}

TEST(Checks, ExtractQitems) {
  auto q = extract_qitems(
      "SELECT ?x WHERE { ?x wdt:P31 wd:Q5 ; <http://www.wikidata.org/entity/Q42> 'Q7' . } # Q9");
  EXPECT_EQ(q, (std::set<std::string>{"Q5", "Q42"}));
}

TEST(Checks, NeverThrowsOnArbitraryBytes) {
  const std::string junk[] = {"\"unterminated", "{{{{", "}}}}", "SELECT \xff\xfe ?x",
                              std::string("\0ASK", 4), "<no closing"};
  for (const auto& s : junk) EXPECT_NO_THROW(run_checks(s, CheckProfile::appendix_c()));
}
