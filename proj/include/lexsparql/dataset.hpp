#ifndef LEXSPARQL_DATASET_HPP
#define LEXSPARQL_DATASET_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexsparql/rational.hpp"

namespace lexsparql {

struct DatasetRecord {
  std::string utterance;
  std::string template_name;
  std::string query;
  // Stable "templateid#k" for test records, empty otherwise.
  std::string id;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

struct SplitConfig {
  Rational test_fraction{1, 10};
  std::size_t test_cap = 20;
  std::size_t min_test_per_template = 1;
  std::uint64_t seed = 0;

  void validate() const;  // Error(config)
};

struct SplitResult {
  std::vector<DatasetRecord> train;
  std::vector<DatasetRecord> test;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_template_counts;
};

// min(max(min_test, floor(n * fraction)), cap, n)
std::size_t test_count(std::size_t n, const SplitConfig& config);

// Deterministic per-template split. Records are ranked inside each template
// by a hash keyed on (seed, template, record content), so the result does
// not depend on input order. Both sides come out grouped by template id in
// rank order; test records receive ids.
SplitResult split(const std::vector<DatasetRecord>& records, const SplitConfig& config);

// One JSON object per line with keys utterance, template_name, query (and id
// first when `with_id`). Returns the record count.
std::size_t export_jsonl(const std::vector<DatasetRecord>& records, std::ostream& sink,
                         bool with_id = false);
// Reads the format above; "id" is optional. Throws Error(parse) with line.
std::vector<DatasetRecord> read_jsonl(std::istream& in, std::string_view source = "jsonl");

// "question: <utterance> answer: <code><query></code>\n" per record. Throws
// Error(validation) for records the format cannot represent.
std::size_t export_training_text(const std::vector<DatasetRecord>& records, std::ostream& sink);
// Inverse of export_training_text; template_name stays empty.
std::vector<DatasetRecord> parse_training_text(std::string_view text);

// Few-shot prompt with n examples of the template sampled from train.
std::string build_fewshot_prompt(std::string_view template_id,
                                 const std::vector<DatasetRecord>& train,
                                 std::string_view target_utterance,
                                 std::size_t n_examples, std::uint64_t seed);

// Content hash used for order-insensitive ranking.
std::uint64_t record_hash(const DatasetRecord& r);

}  // namespace lexsparql

#endif
