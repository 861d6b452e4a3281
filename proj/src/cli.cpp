#include "lexsparql/cli.hpp"

#include <algorithm>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lexsparql/checks.hpp"
#include "lexsparql/config.hpp"
#include "lexsparql/dataset.hpp"
#include "lexsparql/executor.hpp"
#include "lexsparql/generalize.hpp"
#include "lexsparql/metrics.hpp"
#include "lexsparql/population.hpp"
#include "lexsparql/registry.hpp"
#include "lexsparql/templates.hpp"

namespace lexsparql {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config: return kExitConfig;
    case ErrorKind::io: return kExitIo;
    case ErrorKind::endpoint:
    case ErrorKind::timeout:
    case ErrorKind::malformed_query: return kExitEndpoint;
    case ErrorKind::validation:
    case ErrorKind::lookup:
    case ErrorKind::unsupported: return kExitValidation;
    case ErrorKind::parse: return kExitParse;
  }
  return kExitOther;
}

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create '" + dir + "': " + ec.message());
  auto path = (fs::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
  return out;
}

std::string out_path(const RunConfig& c, const std::string& name) {
  return (fs::path(c.out_dir) / name).string();
}

std::vector<DatasetRecord> read_records(const std::string& path) {
  auto in = open_in(path);
  return read_jsonl(in, path);
}

Registry load_registry(const RunConfig& c) {
  auto in = open_in(c.registry_path);
  Registry r = Registry::load(in, c.registry_path);
  if (!c.languages_path.empty()) {
    auto l = open_in(c.languages_path);
    r.load_languages(l, c.languages_path);
  }
  if (!c.pool_path.empty()) {
    auto p = open_in(c.pool_path);
    r.load_pool(p, c.pool_path);
  }
  return r;
}

Catalog load_catalog(const RunConfig& c) {
  if (!fs::exists(c.catalog_path))
    throw Error(ErrorKind::io, "catalog '" + c.catalog_path + "' does not exist");
  if (fs::is_directory(c.catalog_path)) return Catalog::load_dir(c.catalog_path);
  auto in = open_in(c.catalog_path);
  return Catalog::load(in, c.catalog_path);
}

std::unique_ptr<QueryExecutor> executor_for(const RunConfig& c) {
  return make_executor(c.endpoint, c.http, c.limits, nullptr);
}

std::string test_file(const RunConfig& c) {
  return c.scenario == Scenario::generalization ? "generalization_test.jsonl" : "test.jsonl";
}

void write_run_manifest(const RunConfig& c, const std::string& name,
                        const std::map<std::string, std::size_t>& rows,
                        const std::map<std::string, bool>& truncated = {}) {
  Manifest m;
  m.endpoint = c.endpoint;
  m.timestamp = manifest_timestamp();
  m.seed = c.seed;
  m.row_cap = c.limits.max_rows_per_query;
  m.rows_per_template = rows;
  m.truncated = truncated;
  m.extra = c.summary();
  auto out = open_out(c.out_dir, name);
  write_manifest(m, out);
}

int cmd_lint(const RunConfig& c, std::ostream& out) {
  Registry reg = load_registry(c);
  Catalog cat = load_catalog(c);
  auto problems = check_against_registry(cat, reg);
  auto gold = CheckProfile::gold_lint();
  // Gold bodies rendered with dummy values must pass the gold profile.
  for (const auto& spec : cat.specs()) {
    Bindings b;
    for (const auto& t : spec.tag_schema) {
      switch (t.kind) {
        case TagKind::language_code: b[t.name] = "en"; break;
        case TagKind::language_qid: b[t.name] = "Q1860"; break;
        case TagKind::property_value: b[t.name] = "Q1"; break;
        default: b[t.name] = "x";
      }
    }
    auto report = run_checks(render_query(spec, b), gold);
    if (report.c_pass != report.c_all)
      problems.push_back(spec.id + ": rendered body fails " +
                         std::to_string(report.c_all - report.c_pass) + " gold checks");
  }
  for (const auto& p : problems) out << "problem: " << p << '\n';
  out << "templates: " << cat.size() << '\n';
  for (const auto& [p, n] : cat.paradigm_counts()) out << "  " << to_string(p) << ": " << n << '\n';
  out << "properties: " << reg.properties().size() << " classified, " << reg.pool().size()
      << " pooled\n";
  if (!problems.empty())
    throw Error(ErrorKind::validation, std::to_string(problems.size()) + " lint problem(s)");
  out << "lint ok\n";
  return kExitOk;
}

int cmd_populate(const RunConfig& c, std::ostream& out) {
  Catalog cat = load_catalog(c);
  auto ex = executor_for(c);
  auto run = populate_catalog(cat, *ex, c.limits, c.threads);
  auto records = build_dataset(cat, run.rows, c.seed);
  {
    auto f = open_out(c.out_dir, "dataset.jsonl");
    export_jsonl(records, f);
  }
  std::map<std::string, std::size_t> rows;
  std::map<std::string, bool> truncated;
  for (const auto& [id, r] : run.rows) rows[id] = r.size();
  for (const auto& [id, d] : run.details) {
    truncated[id] = d.truncated;
    if (!d.notice.empty()) out << "notice: " << d.notice << '\n';
  }
  write_run_manifest(c, "manifest.txt", rows, truncated);
  std::size_t empty = std::count_if(rows.begin(), rows.end(), [](auto& kv) { return kv.second == 0; });
  out << "records: " << records.size() << " from " << rows.size() << " templates";
  if (empty) out << " (" << empty << " templates without rows)";
  out << '\n';
  return kExitOk;
}

int cmd_split(const RunConfig& c, const std::string& input, std::ostream& out) {
  auto records = read_records(input.empty() ? out_path(c, "dataset.jsonl") : input);
  auto result = split(records, c.split);
  {
    auto f = open_out(c.out_dir, "train.jsonl");
    export_jsonl(result.train, f);
  }
  {
    auto f = open_out(c.out_dir, "test.jsonl");
    export_jsonl(result.test, f, true);
  }
  {
    auto f = open_out(c.out_dir, "train.txt");
    export_training_text(result.train, f);
  }
  std::map<std::string, std::size_t> counts;
  for (const auto& [tid, n] : result.per_template_counts) counts[tid] = n.second;
  write_run_manifest(c, "split_manifest.txt", counts);
  out << "train: " << result.train.size() << "  test: " << result.test.size() << '\n';

  if (c.scenario != Scenario::generalization) return kExitOk;
  Catalog cat = load_catalog(c);
  auto ex = executor_for(c);
  GeneralizationConfig gc;
  gc.seed = c.seed;
  gc.negatives_per_positive = c.negatives_per_positive;
  gc.label_language = c.label_language;
  auto gen = generalize_records(cat, result.test, *ex, gc);
  std::vector<DatasetRecord> transformed;
  for (const auto& g : gen.records) transformed.push_back(g.as_record());
  auto held = holdout_by_shape(cat, records, AnswerShape::ask, transformed, c.native_held);
  {
    auto f = open_out(c.out_dir, "generalization.jsonl");
    export_generalization_jsonl(gen.records, f);
  }
  {
    auto f = open_out(c.out_dir, "generalization_train.jsonl");
    export_jsonl(held.train, f);
  }
  {
    auto f = open_out(c.out_dir, "generalization_test.jsonl");
    export_jsonl(held.test, f, true);
  }
  counts.clear();
  for (const auto& [tid, n] : held.per_template_counts) counts[tid] = n.second;
  write_run_manifest(c, "generalization_manifest.txt", counts);
  out << "generalization: " << gen.records.size() << " transformed (" << gen.skipped_no_rule
      << " without rule, " << gen.skipped_empty_gold << " empty gold, " << gen.missing_negatives
      << " negatives short); train " << held.train.size() << "  test " << held.test.size()
      << '\n';
  return kExitOk;
}

// Template whose training records serve as examples for a test record.
std::string example_template(const std::string& name,
                             const std::map<std::string, std::size_t>& available) {
  if (available.count(name)) return name;
  for (std::string_view prefix : {"ask_rw_", "ask_"}) {
    if (name.rfind(prefix, 0) == 0) {
      std::string base = name.substr(prefix.size());
      if (available.count(base)) return base;
    }
  }
  return name;
}

int cmd_prompts(const RunConfig& c, std::ostream& out) {
  bool gen = c.scenario == Scenario::generalization;
  auto train = read_records(out_path(c, gen ? "generalization_train.jsonl" : "train.jsonl"));
  auto test = read_records(out_path(c, test_file(c)));
  std::map<std::string, std::size_t> available;
  for (const auto& r : train) ++available[r.template_name];
  auto f = open_out(c.out_dir, gen ? "generalization_prompts.jsonl" : "prompts.jsonl");
  std::size_t short_of_examples = 0;
  for (const auto& r : test) {
    auto tid = example_template(r.template_name, available);
    auto have = available.count(tid) ? available[tid] : 0;
    auto n = std::min(c.fewshot_examples, have);
    if (n < c.fewshot_examples) ++short_of_examples;
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["template_name"] = r.template_name;
    j["prompt"] = build_fewshot_prompt(tid, train, r.utterance, n, c.seed);
    f << j.dump() << '\n';
  }
  if (!f) throw Error(ErrorKind::io, "write failed");
  out << "prompts: " << test.size();
  if (short_of_examples) out << " (" << short_of_examples << " with fewer examples than requested)";
  out << '\n';
  return kExitOk;
}

struct Prediction {
  std::string id;
  std::vector<std::string> responses;
};

std::vector<Prediction> read_predictions(const std::string& path) {
  auto in = open_in(path);
  std::vector<Prediction> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      Prediction p;
      p.id = j.at("id").get<std::string>();
      p.responses = j.at("responses").get<std::vector<std::string>>();
      out.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::parse, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

// Whitespace-separated Q-ids; '#' starts a comment.
std::set<std::string> read_qitems(const std::string& path) {
  auto in = open_in(path);
  static const std::regex qid("Q[1-9][0-9]*");
  std::set<std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream words(line.substr(0, line.find('#')));
    for (std::string w; words >> w;) {
      if (!std::regex_match(w, qid))
        throw Error(ErrorKind::parse,
                    path + ":" + std::to_string(lineno) + ": not a Q-item: '" + w + "'");
      out.insert(w);
    }
  }
  return out;
}

int cmd_check(const RunConfig& c, const std::string& input, const std::string& qitems_path,
              std::ostream& out) {
  std::string path = input.empty() ? out_path(c, "predictions.jsonl") : input;
  CheckProfile profile = CheckProfile::named(c.check_profile);
  if (!qitems_path.empty()) profile.known_qitems = read_qitems(qitems_path);
  auto f = open_out(c.out_dir, "checks.jsonl");
  Rational sum;
  std::int64_t n = 0;
  for (const auto& p : read_predictions(path)) {
    for (std::size_t i = 0; i < p.responses.size(); ++i) {
      auto sparql = extract_sparql(p.responses[i]);
      auto report = run_checks(sparql, profile);
      nlohmann::ordered_json j;
      j["id"] = p.id;
      j["response"] = i;
      for (std::size_t k = 0; k < kCheckCount; ++k)
        j[check_label(static_cast<CheckId>(k))] = to_string(report.results[k]);
      j["c_pass"] = report.c_pass;
      j["c_all"] = report.c_all;
      j["ratio"] = report.ratio.str();
      f << j.dump() << '\n';
      sum = sum + report.ratio;
      ++n;
    }
  }
  if (!f) throw Error(ErrorKind::io, "write failed");
  Rational mean = n ? sum / n : Rational();
  auto s = open_out(c.out_dir, "checks_summary.txt");
  s << "profile=" << profile.name << "\nresponses=" << n << "\nmean_granularity=" << mean.str()
    << "\n";
  out << "responses: " << n << "  mean granularity: " << mean << " (" << mean.to_double()
      << ")\n";
  return kExitOk;
}

int cmd_eval(const RunConfig& c, const std::string& predictions, std::ostream& out) {
  auto golds = read_records(out_path(c, test_file(c)));
  auto preds = read_predictions(predictions.empty() ? out_path(c, "predictions.jsonl") : predictions);
  std::map<std::string, const Prediction*> by_id;
  for (const auto& p : preds) {
    if (static_cast<int>(p.responses.size()) != c.k)
      throw Error(ErrorKind::validation, "prediction '" + p.id + "' has " +
                                             std::to_string(p.responses.size()) +
                                             " responses, k = " + std::to_string(c.k));
    by_id[p.id] = &p;
  }
  std::vector<std::vector<std::string>> responses;
  for (const auto& g : golds) {
    auto it = by_id.find(g.id);
    if (it == by_id.end()) throw Error(ErrorKind::validation, "no prediction for '" + g.id + "'");
    responses.push_back(it->second->responses);
  }
  auto ex = executor_for(c);
  CheckProfile profile = CheckProfile::named(c.check_profile);
  EvalOptions opts;
  opts.name_aligned = c.name_aligned;
  auto evals = evaluate_records_parallel(golds, responses, *ex, profile, opts);
  {
    auto f = open_out(c.out_dir, std::string("evaluations_") + to_string(c.scenario) + ".jsonl");
    for (const auto& e : evals) {
      nlohmann::ordered_json j;
      j["id"] = e.record_id;
      j["correct"] = e.correct_flags;
      j["pass_at_k"] = e.pass_at_k.str();
      std::vector<std::string> gran;
      for (const auto& r : e.response_granularity) gran.push_back(r.str());
      j["granularity"] = gran;
      j["errors"] = e.response_errors;
      j["voided"] = e.voided;
      if (e.voided) j["void_reason"] = e.void_reason;
      f << j.dump() << '\n';
    }
  }
  auto report = aggregate(evals, c.scenario, c.k, c.bleu_mode);
  report.check_profile = profile.name;
  {
    auto f = open_out(c.out_dir, std::string("report_") + to_string(c.scenario) + ".json");
    f << report_to_json(report).dump(2) << '\n';
  }
  write_run_manifest(c, std::string("eval_manifest_") + to_string(c.scenario) + ".txt", {});
  out << render_table({report});
  return kExitOk;
}

int cmd_report(const RunConfig* c, std::vector<std::string> inputs, std::ostream& out) {
  if (inputs.empty() && c) {
    for (auto s : {Scenario::non_generalization, Scenario::generalization}) {
      auto p = out_path(*c, std::string("report_") + to_string(s) + ".json");
      if (fs::exists(p)) inputs.push_back(p);
    }
  }
  if (inputs.empty()) throw Error(ErrorKind::io, "no report files found");
  std::vector<AggregateReport> reports;
  for (const auto& p : inputs) {
    auto in = open_in(p);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::parse, p + ": " + e.what());
    }
    reports.push_back(report_from_json(j));
  }
  auto table = render_table(reports);
  out << table;
  if (c) {
    auto f = open_out(c->out_dir, "table.txt");
    f << table;
  }
  return kExitOk;
}

MockServer* g_server = nullptr;

extern "C" void stop_server(int) {
  if (g_server) g_server->stop();
}

int cmd_mock_serve(const std::string& snapshot_path, const std::string& listen, std::ostream& out) {
  auto snap = std::make_shared<const Snapshot>(Snapshot::load_file(snapshot_path));
  auto server = serve_mock(snap, listen);
  out << "serving " << snap->triple_count() << " triples at " << server->url() << std::endl;
  g_server = server.get();
  std::signal(SIGINT, stop_server);
  std::signal(SIGTERM, stop_server);
  server->wait();
  g_server = nullptr;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dataset and evaluation toolkit for text-to-SPARQL over lexicographic data",
               "lexsparql"};
  app.require_subcommand(1);

  std::string config_path, out_dir, profile, scenario;
  std::optional<std::uint64_t> seed;
  std::optional<int> k;
  app.add_option("--config", config_path, "key = value run configuration");
  app.add_option("--seed", seed, "override the configured seed");
  app.add_option("--k", k, "override the number of responses per record");
  app.add_option("--profile", profile, "check profile (appendix_c or gold_lint)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--scenario", scenario, "non_generalization or generalization");

  auto* lint = app.add_subcommand("lint", "validate registry and catalog");
  auto* populate = app.add_subcommand("populate", "populate templates into dataset.jsonl");
  auto* split_cmd = app.add_subcommand("split", "write the train/test split");
  std::string split_in;
  split_cmd->add_option("--input", split_in, "dataset JSONL (default <out>/dataset.jsonl)");
  auto* prompts = app.add_subcommand("prompts", "write few-shot prompts for the test set");
  auto* check = app.add_subcommand("check", "granularity checks over predictions");
  std::string check_in;
  check->add_option("--input", check_in, "predictions JSONL");
  std::string qitems_file;
  check->add_option("--known-qitems", qitems_file, "file of Q-ids the Q-item check accepts");
  auto* eval = app.add_subcommand("eval", "score predictions against the test set");
  std::string preds;
  eval->add_option("--predictions", preds, "predictions JSONL (default <out>/predictions.jsonl)");
  auto* serve = app.add_subcommand("mock-serve", "serve a snapshot as a SPARQL endpoint");
  std::string listen = "127.0.0.1:8890", snapshot_path;
  serve->add_option("--listen", listen, "host:port");
  serve->add_option("--snapshot", snapshot_path, "snapshot file (default: mock endpoint)");
  auto* report = app.add_subcommand("report", "render reports as a table");
  std::vector<std::string> report_files;
  report->add_option("files", report_files, "report JSON files");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    std::optional<RunConfig> cfg;
    if (!config_path.empty()) {
      cfg = load_config(config_path);
      if (seed) {
        cfg->seed = *seed;
        cfg->split.seed = *seed;
      }
      if (k) cfg->k = *k;
      if (!profile.empty()) cfg->check_profile = profile;
      if (!out_dir.empty()) cfg->out_dir = out_dir;
      if (!scenario.empty()) {
        auto s = parse_scenario(scenario);
        if (!s) throw Error(ErrorKind::config, "unknown scenario '" + scenario + "'");
        cfg->scenario = *s;
      }
      cfg->validate();
    }
    if (*report) return cmd_report(cfg ? &*cfg : nullptr, report_files, out);
    if (*serve) {
      if (snapshot_path.empty() && cfg && cfg->endpoint.rfind("mock:", 0) == 0)
        snapshot_path = cfg->endpoint.substr(5);
      if (snapshot_path.empty())
        throw Error(ErrorKind::config, "mock-serve needs --snapshot or a mock: endpoint");
      return cmd_mock_serve(snapshot_path, listen, out);
    }
    if (!cfg) throw Error(ErrorKind::config, "--config is required");
    if (*lint) return cmd_lint(*cfg, out);
    if (*populate) return cmd_populate(*cfg, out);
    if (*split_cmd) return cmd_split(*cfg, split_in, out);
    if (*prompts) return cmd_prompts(*cfg, out);
    if (*check) return cmd_check(*cfg, check_in, qitems_file, out);
    if (*eval) return cmd_eval(*cfg, preds, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOther;
}

}  // namespace lexsparql
