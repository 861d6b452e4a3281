#ifndef LEXSPARQL_CONFIG_HPP
#define LEXSPARQL_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>

#include "lexsparql/dataset.hpp"
#include "lexsparql/executor.hpp"
#include "lexsparql/generalize.hpp"
#include "lexsparql/metrics.hpp"

namespace lexsparql {

inline constexpr const char* kEndpointEnv = "LEXSPARQL_ENDPOINT";

struct RunConfig {
  // URL of a SPARQL endpoint or "mock:<snapshot path>".
  std::string endpoint = "https://query.wikidata.org/sparql";
  EndpointConfig http;
  EndpointLimits limits;
  std::string catalog_path = "catalog";
  std::string registry_path = "registry.csv";
  std::string languages_path;
  std::string pool_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int k = 1;
  std::string check_profile = "appendix_c";
  Scenario scenario = Scenario::non_generalization;
  SplitConfig split;
  int threads = 0;
  std::size_t fewshot_examples = 2;
  BleuMode bleu_mode = BleuMode::first_response;
  bool name_aligned = false;
  NativeHeld native_held = NativeHeld::test;
  std::size_t negatives_per_positive = 1;
  std::string label_language = "en";

  // Throws Error(config) on an invalid combination.
  void validate() const;
  // Settings worth recording next to every output.
  std::map<std::string, std::string> summary() const;
};

// key = value lines, '#' comments. Relative paths resolve against the
// file's directory. LEXSPARQL_ENDPOINT, when set, replaces the endpoint.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::map<std::string, std::string>& kv, const std::string& base_dir);
void apply_env(RunConfig& c);

}  // namespace lexsparql

#endif
