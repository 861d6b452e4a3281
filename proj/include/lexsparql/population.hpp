#ifndef LEXSPARQL_POPULATION_HPP
#define LEXSPARQL_POPULATION_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lexsparql/dataset.hpp"
#include "lexsparql/executor.hpp"
#include "lexsparql/templates.hpp"

namespace lexsparql {

struct PopulationRow {
  Bindings bindings;
  std::string source_template;

  friend bool operator==(const PopulationRow&, const PopulationRow&) = default;
};

struct PopulationResult {
  std::vector<PopulationRow> rows;
  bool truncated = false;
  std::size_t requests = 0;
  std::string notice;  // set when truncated
};

// The population query of a spec plus the paging clause.
std::string page_query(const TemplateSpec& spec, std::size_t limit, std::size_t offset);

// Pages through the spec's population query (ORDER BY every projected
// variable, pages of limits.page_size) until the row cap, keeping one row
// per distinct binding set. A tag value is the local name of an IRI or the
// lexical form of a literal; rows with an unbound or empty tag are dropped.
PopulationResult fetch_population(const TemplateSpec& spec, QueryExecutor& executor,
                                  const EndpointLimits& limits);

using RowsByTemplate = std::map<std::string, std::vector<PopulationRow>>;

struct PopulationRun {
  RowsByTemplate rows;
  std::map<std::string, PopulationResult> details;  // rows moved out
};

// Fetches every template, `threads` at a time (0 = OpenMP default). The
// executor must be safe for concurrent use.
PopulationRun populate_catalog(const Catalog& catalog, QueryExecutor& executor,
                               const EndpointLimits& limits, int threads = 0);

// One record per row in (template id, row index) order.
std::vector<DatasetRecord> build_dataset(const Catalog& catalog,
                                         const RowsByTemplate& rows_by_template,
                                         std::uint64_t seed);

struct Manifest {
  std::string endpoint;
  std::string timestamp;  // ISO 8601 UTC
  std::uint64_t seed = 0;
  std::size_t row_cap = 0;
  std::map<std::string, std::size_t> rows_per_template;
  std::map<std::string, bool> truncated;
  std::map<std::string, std::string> extra;
};

// SOURCE_DATE_EPOCH when set, else the current time.
std::string manifest_timestamp();
void write_manifest(const Manifest& m, std::ostream& out);
std::map<std::string, std::string> read_key_values(std::istream& in);

// Pure: the binding mapping of a ResultSet row restricted to the tags.
bool row_to_bindings(const ResultRow& row, const TemplateSpec& spec, Bindings& out);

}  // namespace lexsparql

#endif
