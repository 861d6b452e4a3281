#include "lexsparql/containment.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace lexsparql {

namespace {

using Key = std::vector<std::string>;

Key row_key(const ResultRow& row, bool name_aligned) {
  Key k;
  k.reserve(row.size());
  for (const auto& [name, term] : row) {
    k.push_back(name_aligned ? name + '\x1e' + term.to_ntriples() : term.to_ntriples());
  }
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

}  // namespace

Containment compare_results(const ResultSet& generated, const ResultSet& gold,
                            bool name_aligned) {
  if (generated.is_boolean() != gold.is_boolean()) return {false, true};
  if (gold.is_boolean()) return {generated.truth == gold.truth, false};

  std::set<Key> gen;
  for (const auto& r : generated.rows) gen.insert(row_key(r, name_aligned));
  std::set<Key> want;
  for (const auto& r : gold.rows) want.insert(row_key(r, name_aligned));

  for (const auto& g : want) {
    if (gen.count(g)) continue;
    bool found = std::any_of(gen.begin(), gen.end(), [&](const Key& cand) {
      return std::includes(cand.begin(), cand.end(), g.begin(), g.end());
    });
    if (!found) return {false, false};
  }
  return {true, false};
}

}  // namespace lexsparql
