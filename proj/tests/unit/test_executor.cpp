#include <gtest/gtest.h>

#include <chrono>
#include <sstream>
#include <thread>

#include "lexsparql/error.hpp"
#include "lexsparql/executor.hpp"
#include "support.hpp"

using namespace lexsparql;
using namespace std::chrono_literals;

namespace {

std::shared_ptr<const Snapshot> tiny() {
  std::istringstream in(R"(wd:L1 wikibase:lemma "Apfel"@de .
wd:L1 wdt:P5185 wd:Q499327 .
wd:L2 wikibase:lemma "Katze"@de .
wd:L2 wdt:P5185 wd:Q1775415 .
wd:Q499327 rdfs:label "masculine"@en .
)");
  return std::make_shared<const Snapshot>(Snapshot::load(in, "tiny"));
}

EndpointLimits fast() {
  EndpointLimits l;
  l.min_request_interval = 0ms;
  l.max_retries = 0;
  l.per_query_timeout = 5000ms;
  return l;
}

ErrorKind kind_of(QueryExecutor& ex, const std::string& q) {
  try {
    ex.execute(q);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << q;
  return ErrorKind::config;
}

}  // namespace

TEST(Limits, Validation) {
  EXPECT_NO_THROW(EndpointLimits{}.validate());
  auto l = EndpointLimits{};
  l.page_size = 0;
  EXPECT_THROW(l.validate(), Error);
  l = EndpointLimits{};
  l.max_retries = -1;
  EXPECT_THROW(l.validate(), Error);
  l = EndpointLimits{};
  l.per_query_timeout = 0ms;
  EXPECT_THROW(l.validate(), Error);
}

TEST(RateLimiter, SpacesGrants) {
  RateLimiter rl(20ms);
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::thread> ts;
  for (int i = 0; i < 4; ++i) ts.emplace_back([&] { rl.acquire(); });
  for (auto& t : ts) t.join();
  EXPECT_GE(std::chrono::steady_clock::now() - t0, 60ms);
}

TEST(MockServer, RemoteMatchesLocal) {
  auto snap = tiny();
  auto server = serve_mock(snap, "127.0.0.1:0");
  ASSERT_GT(server->port(), 0);
  EndpointConfig cfg;
  cfg.url = server->url();
  LocalExecutor local(snap);
  for (const char* method : {"GET", "POST", "auto"}) {
    cfg.method = method;
    RemoteExecutor remote(cfg, fast());
    for (const char* q : {"SELECT ?l ?g WHERE { ?l wdt:P5185 ?g } ORDER BY ?l",
                          "SELECT ?w WHERE { ?l wikibase:lemma ?w FILTER(LANG(?w) = 'de') }",
                          "ASK { wd:L1 wdt:P5185 wd:Q499327 }", "ASK { wd:L2 wdt:P5185 wd:Q499327 }"}) {
      auto a = local.execute(q), b = remote.execute(q);
      EXPECT_EQ(testsupport::result_rows(a, a.variables), testsupport::result_rows(b, b.variables))
          << method << " " << q;
      EXPECT_EQ(a.is_boolean(), b.is_boolean());
    }
    EXPECT_EQ(kind_of(remote, "SELECT WHERE {"), ErrorKind::malformed_query);
  }
}

TEST(MockServer, MissingQueryIsRejected) {
  auto server = serve_mock(tiny(), "127.0.0.1:0");
  EndpointConfig cfg;
  cfg.url = server->url();
  RemoteExecutor remote(cfg, fast());
  EXPECT_EQ(kind_of(remote, ""), ErrorKind::malformed_query);
  EXPECT_EQ(remote.describe(), server->url());
}

TEST(RemoteExecutor, UnreachableEndpoint) {
  int port;
  {
    auto server = serve_mock(tiny(), "127.0.0.1:0");
    port = server->port();
    server->stop();
  }
  EndpointConfig cfg;
  cfg.url = "http://127.0.0.1:" + std::to_string(port) + "/sparql";
  RemoteExecutor remote(cfg, fast());
  auto k = kind_of(remote, "ASK {}");
  EXPECT_TRUE(k == ErrorKind::endpoint || k == ErrorKind::timeout);
}

TEST(RemoteExecutor, ConfigErrors) {
  EndpointConfig cfg;
  cfg.url = "no-scheme/sparql";
  EXPECT_THROW(RemoteExecutor(cfg, fast()), Error);
  cfg.url = "http://127.0.0.1:1/sparql";
  cfg.user_agent.clear();
  EXPECT_THROW(RemoteExecutor(cfg, fast()), Error);
  EXPECT_THROW(serve_mock(tiny(), "localhost"), Error);
  EXPECT_THROW(serve_mock(tiny(), "127.0.0.1:notaport"), Error);
}

TEST(MakeExecutor, MockPrefixLoadsSnapshot) {
  auto ex = make_executor("mock:" + testsupport::data_dir() + "/desk_snapshot.nt",
                          EndpointConfig{}, fast(), nullptr);
  EXPECT_EQ(ex->describe(), "local snapshot");
  EXPECT_TRUE(ex->execute("ASK { ?l wikibase:lemma ?w }").truth);
  auto remote = make_executor("http://127.0.0.1:1/sparql", EndpointConfig{}, fast(), nullptr);
  EXPECT_EQ(remote->describe(), "http://127.0.0.1:1/sparql");
  EXPECT_THROW(make_executor("mock:/no/such/file.nt", EndpointConfig{}, fast(), nullptr), Error);
}
