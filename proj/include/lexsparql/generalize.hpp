#ifndef LEXSPARQL_GENERALIZE_HPP
#define LEXSPARQL_GENERALIZE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lexsparql/dataset.hpp"
#include "lexsparql/executor.hpp"
#include "lexsparql/rdf.hpp"
#include "lexsparql/templates.hpp"

namespace lexsparql {

struct GeneralizationRecord {
  std::string id;
  std::string base_record_id;
  std::string base_template;
  std::string utterance;
  std::string query;
  bool expected_truth = true;
  RdfTerm answer_value;

  // Test-set view: template_name "ask_rw_<base template>".
  DatasetRecord as_record() const;
};

// Tag values of a rendered record, recovered by matching its utterance
// against the spec's variants and confirming that they re-render the query.
// Throws Error(validation) when no variant fits.
Bindings recover_bindings(const DatasetRecord& record, const TemplateSpec& spec);

// SPARQL syntax for a constant: wd:Qn for Wikidata entities, else N-Triples.
std::string sparql_constant(const RdfTerm& term);

// The record's SELECT rewritten as ASK: the answer variable becomes the
// constant, the label service and solution modifiers are dropped.
std::string ask_query(std::string_view select_query, std::string_view answer_var,
                      const RdfTerm& answer_value);

// Throws Error(validation) when the spec has no rewrite rule.
GeneralizationRecord to_ask(const DatasetRecord& record, const TemplateSpec& spec,
                            const RdfTerm& answer_value, std::string_view answer_label,
                            bool negate);

struct GeneralizationConfig {
  std::uint64_t seed = 0;
  std::size_t negatives_per_positive = 1;
  std::size_t candidate_limit = 500;
  std::string label_language = "en";
};

struct GeneralizationRun {
  std::vector<GeneralizationRecord> records;
  std::size_t skipped_no_rule = 0;
  std::size_t skipped_empty_gold = 0;
  std::size_t missing_negatives = 0;
};

// Samples one gold answer per record (positive) and same-property values
// outside the gold answers (negatives), each verified against the executor.
// Records whose template has no rewrite rule are counted and skipped.
GeneralizationRun generalize_records(const Catalog& catalog,
                                     const std::vector<DatasetRecord>& records,
                                     QueryExecutor& executor,
                                     const GeneralizationConfig& config);

enum class NativeHeld { test, train, drop };
const char* to_string(NativeHeld n);
std::optional<NativeHeld> parse_native_held(std::string_view s);

// Train = records of templates whose shape differs from `held`; test = the
// transformed records plus, by default, native records of the held shape.
// Throws Error(validation) when the held shape has neither a catalog
// template nor transformed records, or when a test template leaks into
// train.
SplitResult holdout_by_shape(const Catalog& catalog, const std::vector<DatasetRecord>& records,
                             AnswerShape held,
                             const std::vector<DatasetRecord>& transformed = {},
                             NativeHeld native = NativeHeld::test);

// {id, utterance, query, expected_truth} per line.
std::size_t export_generalization_jsonl(const std::vector<GeneralizationRecord>& records,
                                        std::ostream& sink);

}  // namespace lexsparql

#endif
