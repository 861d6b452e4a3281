#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lexsparql/cli.hpp"
#include "lexsparql/config.hpp"
#include "support.hpp"

using namespace lexsparql;
namespace fs = std::filesystem;

namespace {

struct Cli : ::testing::Test {
  void SetUp() override {
    dir = testsupport::temp_dir("cli");
    const std::string d = testsupport::data_dir();
    conf = dir + "/run.conf";
    std::ofstream f(conf);
    f << "endpoint = mock:" << d << "/desk_snapshot.nt\n"
      << "catalog_path = " << d << "/catalog\n"
      << "registry_path = " << d << "/registry.csv\n"
      << "languages_path = " << d << "/languages.csv\n"
      << "pool_path = " << d << "/pool.csv\n"
      << "out_dir = " << dir << "/out\n"
      << "seed = 11\n";
  }

  int run(std::vector<std::string> args) {
    std::ostringstream o, e;
    int rc = run_cli(args, o, e);
    out = o.str();
    err = e.str();
    return rc;
  }

  std::string dir, conf, out, err;
};

}  // namespace

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(ErrorKind::config), kExitConfig);
  EXPECT_EQ(exit_code_for(ErrorKind::io), kExitIo);
  EXPECT_EQ(exit_code_for(ErrorKind::endpoint), kExitEndpoint);
  EXPECT_EQ(exit_code_for(ErrorKind::timeout), kExitEndpoint);
  EXPECT_EQ(exit_code_for(ErrorKind::malformed_query), kExitEndpoint);
  EXPECT_EQ(exit_code_for(ErrorKind::validation), kExitValidation);
  EXPECT_EQ(exit_code_for(ErrorKind::parse), kExitParse);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({"--help"}), kExitOk);
  EXPECT_NE(out.find("populate"), std::string::npos);
  EXPECT_EQ(run({"--no-such-flag"}), kExitConfig);
  EXPECT_EQ(run({"lint"}), kExitConfig);
  EXPECT_EQ(run({"--config", dir + "/missing.conf", "lint"}), kExitIo);
  EXPECT_EQ(run({"--config", conf, "--scenario", "sideways", "lint"}), kExitConfig);
  EXPECT_NE(err.find("sideways"), std::string::npos);
}

TEST_F(Cli, BadConfigValues) {
  std::ofstream(conf, std::ios::app) << "k = 0\n";
  EXPECT_EQ(run({"--config", conf, "lint"}), kExitConfig);
  std::ofstream(conf, std::ios::app) << "no equals sign\n";
  EXPECT_NE(run({"--config", conf, "lint"}), kExitOk);
}

TEST_F(Cli, LintPasses) {
  EXPECT_EQ(run({"--config", conf, "lint"}), kExitOk) << err;
}

TEST_F(Cli, SplitIsDeterministic) {
  ASSERT_EQ(run({"--config", conf, "populate"}), kExitOk) << err;
  EXPECT_TRUE(fs::exists(dir + "/out/dataset.jsonl"));
  ASSERT_EQ(run({"--config", conf, "split"}), kExitOk) << err;
  auto train1 = testsupport::read_file(dir + "/out/train.jsonl");
  auto test1 = testsupport::read_file(dir + "/out/test.jsonl");
  ASSERT_EQ(run({"--config", conf, "split"}), kExitOk) << err;
  EXPECT_EQ(testsupport::read_file(dir + "/out/train.jsonl"), train1);
  EXPECT_EQ(testsupport::read_file(dir + "/out/test.jsonl"), test1);
  ASSERT_EQ(run({"--config", conf, "--seed", "12", "split"}), kExitOk) << err;
  EXPECT_NE(testsupport::read_file(dir + "/out/test.jsonl"), test1);
}

TEST_F(Cli, EvalRejectsUnknownIds) {
  ASSERT_EQ(run({"--config", conf, "populate"}), kExitOk) << err;
  ASSERT_EQ(run({"--config", conf, "split"}), kExitOk) << err;
  std::ofstream(dir + "/preds.jsonl")
      << nlohmann::json{{"id", "nope#1"}, {"responses", {"ASK {}"}}}.dump() << "\n";
  EXPECT_NE(run({"--config", conf, "eval", "--predictions", dir + "/preds.jsonl"}), kExitOk);
}

TEST_F(Cli, EndpointEnvironmentOverride) {
  ::setenv(kEndpointEnv, "mock:/no/such/snapshot.nt", 1);
  int rc = run({"--config", conf, "populate"});
  ::unsetenv(kEndpointEnv);
  EXPECT_EQ(rc, kExitIo) << err;
  EXPECT_NE(err.find("/no/such/snapshot.nt"), std::string::npos);
}

TEST_F(Cli, CheckWithKnownQitems) {
  const std::string preds = dir + "/preds.jsonl";
  std::ofstream(preds) << nlohmann::json{{"id", "x#1"},
                                         {"responses", {"SELECT ?lexeme WHERE { ?lexeme wdt:P5185 wd:Q499327 }"}}}
                              .dump()
                       << "\n";
  auto c7 = [&] {
    auto line = testsupport::read_file(dir + "/out/checks.jsonl");
    return nlohmann::json::parse(line.substr(0, line.find('\n')))["C7"].get<std::string>();
  };
  ASSERT_EQ(run({"--config", conf, "check", "--input", preds}), kExitOk) << err;
  EXPECT_EQ(c7(), "fail");
  std::ofstream(dir + "/known.txt") << "# genders\nQ499327 Q1775415\n";
  ASSERT_EQ(run({"--config", conf, "check", "--input", preds, "--known-qitems", dir + "/known.txt"}),
            kExitOk)
      << err;
  EXPECT_EQ(c7(), "pass");
  std::ofstream(dir + "/bad.txt") << "Q1 P31\n";
  EXPECT_EQ(run({"--config", conf, "check", "--input", preds, "--known-qitems", dir + "/bad.txt"}),
            kExitParse);
}
