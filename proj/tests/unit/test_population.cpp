#include <gtest/gtest.h>

#include <sstream>

#include "lexsparql/error.hpp"
#include "lexsparql/executor.hpp"
#include "lexsparql/population.hpp"
#include "lexsparql/snapshot.hpp"
#include "lexsparql/templates.hpp"
#include "support.hpp"

using namespace lexsparql;

namespace {

std::shared_ptr<const Snapshot> words(int n) {
  std::ostringstream nt;
  for (int i = 0; i < n; ++i)
    nt << "wd:L" << i << " wikibase:lemma \"w" << i << "\"@en .\n"
       << "wd:L" << i << " dct:language wd:Q1860 .\n";
  nt << "wd:Q1860 rdfs:label \"English\"@en .\n";
  std::istringstream in(nt.str());
  return std::make_shared<const Snapshot>(Snapshot::load(in));
}

TemplateSpec spec() {
  std::istringstream in(R"(=== words
paradigm: language_independent
dimensions: multi multi simple
answer: select
tags: word:lemma
--- variants
words spelled {word}
--- sparql
SELECT ?l WHERE { ?l wikibase:lemma ?x FILTER(STR(?x) = '{word}') }
--- population
SELECT DISTINCT ?word WHERE { ?l wikibase:lemma ?x BIND(STR(?x) AS ?word) }
)");
  return Catalog::load(in).specs().front();
}

// Counts requests and lets a test force an endpoint that ignores LIMIT.
class CountingExecutor : public QueryExecutor {
 public:
  explicit CountingExecutor(std::shared_ptr<const Snapshot> s) : inner_(std::move(s)) {}
  ResultSet execute(std::string_view q) override {
    ++calls;
    last = std::string(q);
    if (ignore_limit) {
      std::string stripped(q.substr(0, q.find("\nLIMIT")));
      return inner_.execute(stripped);
    }
    return inner_.execute(q);
  }
  std::string describe() const override { return "counting"; }
  int calls = 0;
  bool ignore_limit = false;
  std::string last;

 private:
  LocalExecutor inner_;
};

}  // namespace

TEST(Population, PageQueryAppendsStableOrder) {
  auto q = page_query(spec(), 100, 200);
  EXPECT_NE(q.find("\nORDER BY ?word\nLIMIT 100\nOFFSET 200"), std::string::npos) << q;
  EXPECT_EQ(page_query(spec(), 5, 0).find("OFFSET"), std::string::npos);
}

TEST(Population, PagesUntilExhausted) {
  CountingExecutor ex(words(25));
  EndpointLimits lim;
  lim.page_size = 10;
  lim.min_request_interval = std::chrono::milliseconds(0);
  auto r = fetch_population(spec(), ex, lim);
  EXPECT_EQ(r.rows.size(), 25u);
  EXPECT_FALSE(r.truncated);
  EXPECT_EQ(r.requests, 3u);
}

TEST(Population, RowCapTruncatesWithNotice) {
  CountingExecutor ex(words(30));
  EndpointLimits lim;
  lim.page_size = 7;
  lim.max_rows_per_query = 12;
  auto r = fetch_population(spec(), ex, lim);
  EXPECT_EQ(r.rows.size(), 12u);
  EXPECT_TRUE(r.truncated);
  EXPECT_NE(r.notice.find("truncated at 12"), std::string::npos);

  lim.max_rows_per_query = 30;
  r = fetch_population(spec(), ex, lim);
  EXPECT_EQ(r.rows.size(), 30u);
  EXPECT_FALSE(r.truncated);
}

TEST(Population, EndpointIgnoringLimitIsAnError) {
  CountingExecutor ex(words(30));
  ex.ignore_limit = true;
  EndpointLimits lim;
  lim.page_size = 10;
  try {
    fetch_population(spec(), ex, lim);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::endpoint);
  }
}

TEST(Population, PackagedCatalogPopulatesEveryTemplate) {
  auto snap = std::make_shared<const Snapshot>(
      Snapshot::load_file(testsupport::data_dir() + "/desk_snapshot.nt"));
  LocalExecutor ex(snap);
  Catalog cat = Catalog::load_dir(testsupport::data_dir() + "/catalog");
  auto run = populate_catalog(cat, ex, EndpointLimits{}, 2);
  for (const auto& s : cat.specs()) EXPECT_FALSE(run.rows[s.id].empty()) << s.id;
  EXPECT_EQ(run.rows["limit_t9_P2859"].size(), 2u);
  auto a = build_dataset(cat, run.rows, 5);
  auto b = build_dataset(cat, populate_catalog(cat, ex, EndpointLimits{}, 1).rows, 5);
  EXPECT_EQ(a, b);
  for (const auto& r : a) EXPECT_TRUE(ex.execute(r.query).has_answer()) << r.query;
}

TEST(Manifest, WriteAndReadBack) {
  Manifest m;
  m.endpoint = "mock:x";
  m.timestamp = "2024-01-01T00:00:00Z";
  m.seed = 3;
  m.row_cap = 30000;
  m.rows_per_template = {{"t1", 4}};
  m.truncated = {{"t1", true}};
  std::ostringstream out;
  write_manifest(m, out);
  std::istringstream in(out.str());
  auto kv = read_key_values(in);
  EXPECT_EQ(kv["seed"], "3");
  EXPECT_EQ(kv["rows.t1"], "4");
  EXPECT_EQ(kv["truncated.t1"], "1");
  EXPECT_EQ(kv["rows_total"], "4");
}
