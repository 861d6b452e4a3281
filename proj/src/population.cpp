#include "lexsparql/population.hpp"

#include <cstdlib>
#include <ctime>
#include <exception>
#include <istream>
#include <ostream>
#include <set>

#include <omp.h>

#include "lexsparql/error.hpp"
#include "lexsparql/query.hpp"
#include "lexsparql/text.hpp"

namespace lexsparql {

std::string page_query(const TemplateSpec& spec, std::size_t limit, std::size_t offset) {
  Query q = parse_query(spec.population);
  if (!q.order.empty() || q.limit || q.offset)
    throw Error(ErrorKind::validation,
                spec.id + ": population query must not carry ORDER BY / LIMIT / OFFSET");
  const auto& cols = q.select_all ? q.variables : q.projection;
  std::string out = spec.population;
  out += "\nORDER BY";
  for (const auto& c : cols) out += " ?" + c;
  out += "\nLIMIT " + std::to_string(limit);
  if (offset) out += "\nOFFSET " + std::to_string(offset);
  return out;
}

bool row_to_bindings(const ResultRow& row, const TemplateSpec& spec, Bindings& out) {
  out.clear();
  for (const auto& tag : spec.tag_schema) {
    auto it = row.find(tag.name);
    if (it == row.end()) return false;
    std::string v = it->second.is_iri() ? it->second.local_name() : it->second.value;
    if (v.empty()) return false;
    out.emplace(tag.name, std::move(v));
  }
  return true;
}

PopulationResult fetch_population(const TemplateSpec& spec, QueryExecutor& executor,
                                  const EndpointLimits& limits) {
  limits.validate();
  if (spec.population.empty())
    throw Error(ErrorKind::validation, spec.id + ": template has no population query");
  PopulationResult out;
  std::set<Bindings> seen;
  const std::size_t cap = limits.max_rows_per_query;
  std::size_t offset = 0;
  // One row beyond the cap is requested so truncation is detectable.
  while (out.rows.size() <= cap) {
    std::size_t want = std::min(limits.page_size, cap + 1 - out.rows.size());
    ResultSet rs = executor.execute(page_query(spec, want, offset));
    ++out.requests;
    if (rs.is_boolean())
      throw Error(ErrorKind::parse, spec.id + ": population query returned a boolean");
    if (rs.rows.size() > want)
      throw Error(ErrorKind::endpoint,
                  spec.id + ": endpoint returned " + std::to_string(rs.rows.size()) +
                      " rows for LIMIT " + std::to_string(want) +
                      "; row cap cannot be enforced without pagination support");
    for (const auto& row : rs.rows) {
      Bindings b;
      if (!row_to_bindings(row, spec, b)) continue;
      if (!seen.insert(b).second) continue;
      out.rows.push_back({std::move(b), spec.id});
    }
    offset += rs.rows.size();
    if (rs.rows.size() < want) break;
  }
  if (out.rows.size() > cap) {
    out.rows.resize(cap);
    out.truncated = true;
    out.notice = spec.id + ": population truncated at " + std::to_string(cap) + " rows";
  }
  return out;
}

PopulationRun populate_catalog(const Catalog& catalog, QueryExecutor& executor,
                               const EndpointLimits& limits, int threads) {
  const auto& specs = catalog.specs();
  std::vector<PopulationResult> results(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  const int n = static_cast<int>(specs.size());
  if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int i = 0; i < n; ++i) {
    try {
      results[i] = fetch_population(specs[i], executor, limits);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  PopulationRun run;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    run.rows[specs[i].id] = std::move(results[i].rows);
    results[i].rows.clear();
    run.details[specs[i].id] = std::move(results[i]);
  }
  return run;
}

std::vector<DatasetRecord> build_dataset(const Catalog& catalog,
                                         const RowsByTemplate& rows_by_template,
                                         std::uint64_t seed) {
  std::vector<DatasetRecord> out;
  for (const auto& [tid, rows] : rows_by_template) {
    const TemplateSpec* spec = catalog.find(tid);
    if (!spec) throw Error(ErrorKind::lookup, "rows for unknown template '" + tid + "'");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      try {
        DatasetRecord r;
        r.utterance = render_utterance(*spec, rows[i].bindings, pick_variant(*spec, seed, i));
        r.query = render_query(*spec, rows[i].bindings);
        r.template_name = spec->id;
        out.push_back(std::move(r));
      } catch (const Error& e) {
        throw Error(e.kind(), tid + " row " + std::to_string(i) + ": " + e.what());
      }
    }
  }
  return out;
}

std::string manifest_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    long long v = std::strtoll(sde, &end, 10);
    if (end != sde && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const Manifest& m, std::ostream& out) {
  out << "endpoint=" << m.endpoint << '\n'
      << "timestamp=" << m.timestamp << '\n'
      << "seed=" << m.seed << '\n'
      << "row_cap=" << m.row_cap << '\n'
      << "row_cap_scope=per-template population query union\n";
  for (const auto& [k, v] : m.extra) out << k << '=' << v << '\n';
  std::size_t total = 0;
  for (const auto& [id, n] : m.rows_per_template) {
    out << "rows." << id << '=' << n << '\n';
    total += n;
  }
  for (const auto& [id, t] : m.truncated) {
    if (t) out << "truncated." << id << "=1\n";
  }
  out << "rows_total=" << total << '\n';
  if (!out) throw Error(ErrorKind::io, "cannot write manifest");
}

std::map<std::string, std::string> read_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::parse, "line " + std::to_string(lineno) + ": expected key=value");
    out[std::string(text::trim(t.substr(0, eq)))] = std::string(text::trim(t.substr(eq + 1)));
  }
  return out;
}

}  // namespace lexsparql
