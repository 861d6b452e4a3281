#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "lexsparql/dataset.hpp"
#include "lexsparql/error.hpp"
#include "support.hpp"

using namespace lexsparql;

namespace {

std::vector<DatasetRecord> corpus(std::initializer_list<std::pair<std::string, std::size_t>> sizes) {
  std::vector<DatasetRecord> out;
  for (const auto& [tpl, n] : sizes)
    for (std::size_t i = 0; i < n; ++i)
      out.push_back({tpl + " question " + std::to_string(i), tpl,
                     "SELECT ?x WHERE { ?x ?p " + std::to_string(i) + " }", ""});
  return out;
}

using Counts = std::pair<std::size_t, std::size_t>;

}  // namespace

TEST(Split, TestCountLaw) {
  SplitConfig c;
  EXPECT_EQ(test_count(1, c), 1u);
  EXPECT_EQ(test_count(9, c), 1u);
  EXPECT_EQ(test_count(10, c), 1u);
  EXPECT_EQ(test_count(29, c), 2u);
  EXPECT_EQ(test_count(200, c), 20u);
  EXPECT_EQ(test_count(201, c), 20u);
  EXPECT_EQ(test_count(29922, c), 20u);
  EXPECT_EQ(test_count(0, c), 0u);
}

TEST(Split, PerTemplateCountsAndIds) {
  SplitConfig c;
  c.seed = 9;
  auto r = split(corpus({{"a", 1}, {"b", 57}, {"c", 400}}), c);
  EXPECT_EQ(r.per_template_counts["a"], (Counts{0, 1}));
  EXPECT_EQ(r.per_template_counts["b"], (Counts{52, 5}));
  EXPECT_EQ(r.per_template_counts["c"], (Counts{380, 20}));
  EXPECT_EQ(r.test.size(), 26u);
  for (const auto& t : r.test) EXPECT_EQ(t.id.rfind(t.template_name + "#", 0), 0u) << t.id;
  for (const auto& t : r.train) EXPECT_TRUE(t.id.empty());
}

TEST(Split, SeedChangesSelectionButNotCounts) {
  auto data = corpus({{"b", 100}});
  SplitConfig c1, c2;
  c1.seed = 1;
  c2.seed = 2;
  auto a = split(data, c1), b = split(data, c2);
  EXPECT_EQ(a.test.size(), b.test.size());
  EXPECT_NE(a.test, b.test);
  auto rev = data;
  std::reverse(rev.begin(), rev.end());
  EXPECT_EQ(split(rev, c1).test, a.test);
}

TEST(Split, ConfigValidation) {
  SplitConfig c;
  c.test_fraction = Rational(3, 2);
  EXPECT_THROW(c.validate(), Error);
  c = SplitConfig{};
  c.test_cap = 0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Jsonl, RoundTripWithAndWithoutIds) {
  std::vector<DatasetRecord> recs = {{"Wie heißt \"das\"?", "t1", "SELECT ?x\nWHERE { }", "t1#1"},
                                     {"x", "t2", "ASK {}", ""}};
  std::ostringstream out;
  EXPECT_EQ(export_jsonl(recs, out, true), 2u);
  std::istringstream in(out.str());
  EXPECT_EQ(read_jsonl(in), recs);
  EXPECT_EQ(out.str().substr(0, 7), "{\"id\":\"");
  std::istringstream bad("{\"utterance\": 1}\n");
  EXPECT_THROW(read_jsonl(bad), Error);
}

TEST(TrainingText, ExactLayoutAndInverse) {
  std::vector<DatasetRecord> recs = {{"Apfel gender in German", "t1", "SELECT ?x\nWHERE {}", ""}};
  std::ostringstream out;
  export_training_text(recs, out);
  EXPECT_EQ(out.str(), "question: Apfel gender in German answer: <code>SELECT ?x\nWHERE {}</code>\n");
  auto back = parse_training_text(out.str());
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].utterance, recs[0].utterance);
  EXPECT_EQ(back[0].query, recs[0].query);
  EXPECT_TRUE(back[0].template_name.empty());
}

TEST(TrainingText, UnrepresentableRecordsAreRejected) {
  std::ostringstream out;
  EXPECT_THROW(export_training_text({{"a\nb", "t", "SELECT ?x {}", ""}}, out), Error);
  EXPECT_THROW(export_training_text({{"a", "t", "SELECT ?x {} </code>", ""}}, out), Error);
}

TEST(FewShot, PublishedPromptVerbatim) {
  std::string apfel = testsupport::kApfelGenderQuery;
  apfel.replace(apfel.find("           wdt"), 11, "          ");
  std::string medailon = apfel;
  medailon.replace(medailon.find("'Apfel'@de"), 10, "'medailon'@cs");
  std::vector<DatasetRecord> train = {{"Apfel gender in German", "t1_P5185", apfel, ""},
                                      {"medailon gender Czech", "t1_P5185", medailon, ""},
                                      {"unrelated", "t2_P5191", "SELECT ?x {}", ""}};
  EXPECT_EQ(build_fewshot_prompt("t1_P5185", train, "What is Probek\xC3\xB6rpers gender in German?",
                                 2, 77),
            testsupport::kFewShotPrompt);
  EXPECT_THROW(build_fewshot_prompt("t1_P5185", train, "x", 3, 0), Error);
  auto one = build_fewshot_prompt("t1_P5185", train, "x", 1, 0);
  EXPECT_EQ(one.rfind("Utterance 1:\n", 0), 0u);
  EXPECT_EQ(one.find("Utterance 2:"), std::string::npos);
}
