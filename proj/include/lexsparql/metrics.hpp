#ifndef LEXSPARQL_METRICS_HPP
#define LEXSPARQL_METRICS_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lexsparql/checks.hpp"
#include "lexsparql/dataset.hpp"
#include "lexsparql/executor.hpp"
#include "lexsparql/rational.hpp"

namespace lexsparql {

// k_correct / k. Throws Error(validation) for an empty list.
Rational pass_at_k(const std::vector<bool>& correct_flags);

// mteval-v13a tokenization as implemented by sacrebleu (tok:13a).
std::string tokenize_13a(std::string_view line);

struct BleuStats {
  std::size_t sys_len = 0;
  std::size_t ref_len = 0;
  std::array<std::size_t, 4> correct{};
  std::array<std::size_t, 4> total{};

  BleuStats& operator+=(const BleuStats& o);
};

BleuStats bleu_sentence_stats(std::string_view candidate, std::string_view reference);
// Score in [0, 100] with exponential smoothing and no effective order.
double compute_bleu(const BleuStats& stats);
// nrefs:1|case:mixed|eff:no|tok:13a|smooth:exp. Throws Error(validation) on
// a length mismatch.
double bleu_corpus(const std::vector<std::string>& candidates,
                   const std::vector<std::string>& references);

// SPARQL inside a model response: the <code>...</code> fence when present,
// else the text from the first SELECT / ASK keyword on, else the response.
std::string extract_sparql(std::string_view response);

enum class Scenario { non_generalization, generalization };
const char* to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view s);

struct RecordEvaluation {
  std::string record_id;
  std::vector<std::string> responses;
  std::vector<std::string> sparql;  // extracted from each response
  std::vector<bool> correct_flags;
  std::vector<Rational> response_granularity;
  std::vector<std::string> response_errors;  // empty string = executed fine
  Rational pass_at_k;
  Rational granularity;
  std::string bleu_candidate;  // first response's SPARQL
  std::string bleu_reference;  // gold query
  bool voided = false;
  std::string void_reason;
};

struct EvalOptions {
  bool name_aligned = false;
  // Known Q-items default to those of the gold query; extra ones are added.
  bool known_qitems_from_gold = true;
};

// Runs the gold query and every response through the executor. Execution
// failures of a response count as incorrect; a failing gold query voids the
// record.
RecordEvaluation evaluate_record(const DatasetRecord& gold,
                                 const std::vector<std::string>& responses,
                                 QueryExecutor& executor, const CheckProfile& profile,
                                 const EvalOptions& options = {});

// Same, for a batch. The parallel version uses OpenMP across records and
// produces the same results as the serial one.
std::vector<RecordEvaluation> evaluate_records_serial(
    const std::vector<DatasetRecord>& golds,
    const std::vector<std::vector<std::string>>& responses, QueryExecutor& executor,
    const CheckProfile& profile, const EvalOptions& options = {});
std::vector<RecordEvaluation> evaluate_records_parallel(
    const std::vector<DatasetRecord>& golds,
    const std::vector<std::vector<std::string>>& responses, QueryExecutor& executor,
    const CheckProfile& profile, const EvalOptions& options = {});

enum class BleuMode { first_response, best_of_k };

struct AggregateReport {
  Scenario scenario = Scenario::non_generalization;
  int k = 1;
  Rational mean_pass_at_k;
  Rational mean_granularity;
  double corpus_bleu = 0;
  std::size_t n_records = 0;
  std::size_t n_voided = 0;
  std::string check_profile;
};

// Means over non-voided records; throws Error(validation) when every record
// is voided or the list is empty.
AggregateReport aggregate(const std::vector<RecordEvaluation>& evals, Scenario scenario, int k,
                          BleuMode mode = BleuMode::first_response);

nlohmann::ordered_json report_to_json(const AggregateReport& r);
AggregateReport report_from_json(const nlohmann::json& j);
// Plain-text table with the pass@k / R_granularity / BLEU columns; one row
// per report.
std::string render_table(const std::vector<AggregateReport>& reports);

}  // namespace lexsparql

#endif
