#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "lexsparql/error.hpp"
#include "lexsparql/generalize.hpp"
#include "lexsparql/templates.hpp"
#include "support.hpp"

using namespace lexsparql;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::load_dir(testsupport::data_dir() + "/catalog");
  return c;
}

RdfTerm wd(const std::string& local) { return RdfTerm::make_iri(std::string(iri::kWd) + local); }

DatasetRecord apfel() {
  const auto& spec = catalog().at("t1_P5185");
  return {"Apfel gender in German", "t1_P5185",
          render_query(spec, {{"word", "Apfel"}, {"code", "de"}, {"language", "German"}}),
          "t1_P5185#4"};
}

}  // namespace

TEST(Generalize, RecoverBindingsFromUtteranceAndQuery) {
  auto b = recover_bindings(apfel(), catalog().at("t1_P5185"));
  EXPECT_EQ(b.at("word"), "Apfel");
  EXPECT_EQ(b.at("code"), "de");
  EXPECT_EQ(b.at("language"), "German");
  auto bad = apfel();
  bad.utterance = "Tell me about Apfel";
  EXPECT_THROW(recover_bindings(bad, catalog().at("t1_P5185")), Error);
  bad = apfel();
  bad.query += " ";
  EXPECT_THROW(recover_bindings(bad, catalog().at("t1_P5185")), Error);
}

TEST(Generalize, SparqlConstant) {
  EXPECT_EQ(sparql_constant(wd("Q499327")), "wd:Q499327");
  EXPECT_EQ(sparql_constant(wd("L1-F2")), "wd:L1-F2");
  EXPECT_EQ(sparql_constant(RdfTerm::make_iri("urn:x")), "<urn:x>");
  EXPECT_EQ(sparql_constant(wd("something")), "<http://www.wikidata.org/entity/something>");
}

TEST(Generalize, AskQueryDropsLabelServiceAndBindsAnswer) {
  auto q = ask_query(apfel().query, "qitem", wd("Q499327"));
  EXPECT_EQ(q.rfind("ASK WHERE {", 0), 0u) << q;
  EXPECT_EQ(q.find("SERVICE"), std::string::npos);
  EXPECT_EQ(q.find("?qitem"), std::string::npos);
  EXPECT_NE(q.find("wdt:P5185 wd:Q499327"), std::string::npos) << q;
  EXPECT_THROW(ask_query("ASK { ?s ?p ?o }", "o", wd("Q1")), Error);
  EXPECT_THROW(ask_query("SELECT ?x WHERE { 'open ", "x", wd("Q1")), Error);
}

TEST(Generalize, ToAskPositiveAndNegative) {
  const auto& spec = catalog().at("t1_P5185");
  auto pos = to_ask(apfel(), spec, wd("Q499327"), "masculine", false);
  EXPECT_EQ(pos.utterance, "Is the gender of 'Apfel' in German masculine?");
  EXPECT_TRUE(pos.expected_truth);
  EXPECT_EQ(pos.id, "t1_P5185#4/pos");
  EXPECT_EQ(pos.as_record().template_name, "ask_rw_t1_P5185");
  auto neg = to_ask(apfel(), spec, wd("Q1775415"), "feminine", true);
  EXPECT_FALSE(neg.expected_truth);
  EXPECT_EQ(neg.id, "t1_P5185#4/neg");
  const auto& ask_spec = catalog().at("ask_t1_P5185");
  EXPECT_THROW(to_ask(apfel(), ask_spec, wd("Q1"), "x", false), Error);
}

TEST(Generalize, NativeHeldNames) {
  for (auto n : {NativeHeld::test, NativeHeld::train, NativeHeld::drop})
    EXPECT_EQ(parse_native_held(to_string(n)), n);
  EXPECT_FALSE(parse_native_held("keep"));
}

TEST(Generalize, HoldoutKeepsShapesApart) {
  std::vector<DatasetRecord> recs = {apfel(),
                                     {"is it", "ask_t1_P5185", "ASK {}", ""}};
  auto pos = to_ask(apfel(), catalog().at("t1_P5185"), wd("Q499327"), "masculine", false);
  auto r = holdout_by_shape(catalog(), recs, AnswerShape::ask, {pos.as_record()});
  ASSERT_EQ(r.train.size(), 1u);
  EXPECT_EQ(r.train[0].template_name, "t1_P5185");
  EXPECT_EQ(r.test.size(), 2u);
  auto dropped = holdout_by_shape(catalog(), recs, AnswerShape::ask, {pos.as_record()},
                                  NativeHeld::drop);
  EXPECT_EQ(dropped.test.size(), 1u);
  auto moved = holdout_by_shape(catalog(), recs, AnswerShape::ask, {pos.as_record()},
                                NativeHeld::train);
  EXPECT_EQ(moved.test.size(), 1u);
}

TEST(Generalize, ExportJsonl) {
  auto pos = to_ask(apfel(), catalog().at("t1_P5185"), wd("Q499327"), "masculine", false);
  std::ostringstream out;
  EXPECT_EQ(export_generalization_jsonl({pos}, out), 1u);
  auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["id"], pos.id);
  EXPECT_EQ(j["expected_truth"], true);
  EXPECT_EQ(j["query"], pos.query);
}
