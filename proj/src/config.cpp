#include "lexsparql/config.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>

#include "lexsparql/checks.hpp"
#include "lexsparql/error.hpp"
#include "lexsparql/population.hpp"

namespace lexsparql {

namespace fs = std::filesystem;

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw Error(ErrorKind::config, key + ": not a number: '" + v + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw Error(ErrorKind::config, key + ": expected true or false, got '" + v + "'");
}

Rational parse_fraction(const std::string& key, const std::string& v) {
  auto slash = v.find('/');
  if (slash == std::string::npos)
    throw Error(ErrorKind::config, key + ": expected a fraction like 1/10");
  return Rational(parse_number<std::int64_t>(key, v.substr(0, slash)),
                  parse_number<std::int64_t>(key, v.substr(slash + 1)));
}

std::string resolve(const std::string& base, const std::string& p) {
  if (p.empty() || base.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base) / p).lexically_normal().string();
}

}  // namespace

void RunConfig::validate() const {
  if (k < 1) throw Error(ErrorKind::config, "k must be >= 1");
  if (endpoint.empty()) throw Error(ErrorKind::config, "endpoint is empty");
  if (out_dir.empty()) throw Error(ErrorKind::config, "out_dir is empty");
  if (fewshot_examples < 1) throw Error(ErrorKind::config, "fewshot_examples must be >= 1");
  CheckProfile::named(check_profile);
  limits.validate();
  split.validate();
}

std::map<std::string, std::string> RunConfig::summary() const {
  return {
      {"check_profile", check_profile},
      {"k", std::to_string(k)},
      {"scenario", to_string(scenario)},
      {"bleu_mode", bleu_mode == BleuMode::best_of_k ? "best_of_k" : "first_response"},
      {"native_held", to_string(native_held)},
      {"test_fraction", split.test_fraction.str()},
      {"test_cap", std::to_string(split.test_cap)},
      {"fewshot_examples", std::to_string(fewshot_examples)},
      {"negatives_per_positive", std::to_string(negatives_per_positive)},
  };
}

RunConfig parse_config(const std::map<std::string, std::string>& kv, const std::string& base_dir) {
  RunConfig c;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto ms = [](std::chrono::milliseconds& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) {
      field = std::chrono::milliseconds(parse_number<long long>(k, v));
    };
  };
  auto size = [](std::size_t& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) {
      field = parse_number<std::size_t>(k, v);
    };
  };
  auto path = [&base_dir](std::string& field) -> Setter {
    return [&field, &base_dir](const std::string&, const std::string& v) {
      field = resolve(base_dir, v);
    };
  };
  const std::map<std::string, Setter> setters = {
      {"endpoint",
       [&](const std::string&, const std::string& v) {
         c.endpoint = v.rfind("mock:", 0) == 0 ? "mock:" + resolve(base_dir, v.substr(5)) : v;
       }},
      {"user_agent", [&](const std::string&, const std::string& v) { c.http.user_agent = v; }},
      {"http_method", [&](const std::string&, const std::string& v) { c.http.method = v; }},
      {"max_rows_per_query", size(c.limits.max_rows_per_query)},
      {"page_size", size(c.limits.page_size)},
      {"timeout_ms", ms(c.limits.per_query_timeout)},
      {"min_request_interval_ms", ms(c.limits.min_request_interval)},
      {"initial_backoff_ms", ms(c.limits.initial_backoff)},
      {"max_retries",
       [&](const std::string& k, const std::string& v) {
         c.limits.max_retries = parse_number<int>(k, v);
       }},
      {"catalog_path", path(c.catalog_path)},
      {"registry_path", path(c.registry_path)},
      {"languages_path", path(c.languages_path)},
      {"pool_path", path(c.pool_path)},
      {"out_dir", path(c.out_dir)},
      {"seed",
       [&](const std::string& k, const std::string& v) {
         c.seed = parse_number<std::uint64_t>(k, v);
         c.split.seed = c.seed;
       }},
      {"k", [&](const std::string& k, const std::string& v) { c.k = parse_number<int>(k, v); }},
      {"check_profile", [&](const std::string&, const std::string& v) { c.check_profile = v; }},
      {"scenario",
       [&](const std::string& k, const std::string& v) {
         auto s = parse_scenario(v);
         if (!s) throw Error(ErrorKind::config, k + ": unknown scenario '" + v + "'");
         c.scenario = *s;
       }},
      {"test_fraction",
       [&](const std::string& k, const std::string& v) {
         c.split.test_fraction = parse_fraction(k, v);
       }},
      {"test_cap", size(c.split.test_cap)},
      {"min_test_per_template", size(c.split.min_test_per_template)},
      {"threads",
       [&](const std::string& k, const std::string& v) { c.threads = parse_number<int>(k, v); }},
      {"fewshot_examples", size(c.fewshot_examples)},
      {"bleu_mode",
       [&](const std::string& k, const std::string& v) {
         if (v == "first_response") c.bleu_mode = BleuMode::first_response;
         else if (v == "best_of_k") c.bleu_mode = BleuMode::best_of_k;
         else throw Error(ErrorKind::config, k + ": unknown mode '" + v + "'");
       }},
      {"name_aligned",
       [&](const std::string& k, const std::string& v) { c.name_aligned = parse_bool(k, v); }},
      {"native_held",
       [&](const std::string& k, const std::string& v) {
         auto n = parse_native_held(v);
         if (!n) throw Error(ErrorKind::config, k + ": expected test, train or drop");
         c.native_held = *n;
       }},
      {"negatives_per_positive", size(c.negatives_per_positive)},
      {"label_language", [&](const std::string&, const std::string& v) { c.label_language = v; }},
  };
  for (const auto& [key, value] : kv) {
    auto it = setters.find(key);
    if (it == setters.end()) throw Error(ErrorKind::config, "unknown config key '" + key + "'");
    it->second(key, value);
  }
  return c;
}

void apply_env(RunConfig& c) {
  if (const char* e = std::getenv(kEndpointEnv); e && *e) c.endpoint = e;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  try {
    kv = read_key_values(in);
  } catch (const Error& e) {
    throw Error(ErrorKind::config, path + ": " + e.what());
  }
  RunConfig c = parse_config(kv, fs::path(path).parent_path().string());
  apply_env(c);
  c.validate();
  return c;
}

}  // namespace lexsparql
