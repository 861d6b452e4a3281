#include "lexsparql/dataset.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "lexsparql/error.hpp"
#include "lexsparql/hash.hpp"

namespace lexsparql {

namespace {

constexpr std::string_view kQuestion = "question: ";
constexpr std::string_view kAnswer = " answer: <code>";
constexpr std::string_view kClose = "</code>";

struct Ranked {
  std::uint64_t key;
  const DatasetRecord* record;
};

// Records of one template ordered by their keyed content hash.
std::vector<const DatasetRecord*> rank(const std::vector<const DatasetRecord*>& group,
                                       std::string_view template_id, std::uint64_t seed) {
  std::vector<Ranked> r;
  r.reserve(group.size());
  for (const auto* rec : group) {
    r.push_back({mix(keyed_hash(seed, template_id), record_hash(*rec)), rec});
  }
  std::sort(r.begin(), r.end(), [](const Ranked& a, const Ranked& b) {
    if (a.key != b.key) return a.key < b.key;
    return std::tie(a.record->utterance, a.record->query) <
           std::tie(b.record->utterance, b.record->query);
  });
  std::vector<const DatasetRecord*> out;
  out.reserve(r.size());
  for (const auto& x : r) out.push_back(x.record);
  return out;
}

void check_sink(std::ostream& sink) {
  if (!sink) throw Error(ErrorKind::io, "write to output stream failed");
}

}  // namespace

std::uint64_t record_hash(const DatasetRecord& r) {
  std::uint64_t h = fnv1a(r.utterance);
  h = fnv1a("\x1f", h);
  h = fnv1a(r.template_name, h);
  h = fnv1a("\x1f", h);
  return fnv1a(r.query, h);
}

void SplitConfig::validate() const {
  if (test_fraction.num <= 0 || test_fraction.num > test_fraction.den)
    throw Error(ErrorKind::config, "test_fraction must be in (0, 1]");
  if (min_test_per_template < 1) throw Error(ErrorKind::config, "min_test_per_template must be >= 1");
  if (test_cap < min_test_per_template)
    throw Error(ErrorKind::config, "test_cap must be >= min_test_per_template");
}

std::size_t test_count(std::size_t n, const SplitConfig& c) {
  auto frac = static_cast<std::size_t>((static_cast<unsigned __int128>(n) *
                                        static_cast<std::uint64_t>(c.test_fraction.num)) /
                                       static_cast<std::uint64_t>(c.test_fraction.den));
  return std::min({std::max(c.min_test_per_template, frac), c.test_cap, n});
}

SplitResult split(const std::vector<DatasetRecord>& records, const SplitConfig& config) {
  config.validate();
  std::map<std::string, std::vector<const DatasetRecord*>> groups;
  for (const auto& r : records) groups[r.template_name].push_back(&r);

  SplitResult out;
  out.train.reserve(records.size());
  for (const auto& [tid, group] : groups) {
    auto ranked = rank(group, tid, config.seed);
    std::size_t n_test = test_count(ranked.size(), config);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      DatasetRecord r = *ranked[i];
      if (i < n_test) {
        r.id = tid + "#" + std::to_string(i + 1);
        out.test.push_back(std::move(r));
      } else {
        r.id.clear();
        out.train.push_back(std::move(r));
      }
    }
    out.per_template_counts[tid] = {ranked.size() - n_test, n_test};
  }
  return out;
}

std::size_t export_jsonl(const std::vector<DatasetRecord>& records, std::ostream& sink,
                         bool with_id) {
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    if (with_id) j["id"] = r.id;
    j["utterance"] = r.utterance;
    j["template_name"] = r.template_name;
    j["query"] = r.query;
    sink << j.dump() << '\n';
    check_sink(sink);
  }
  return records.size();
}

std::vector<DatasetRecord> read_jsonl(std::istream& in, std::string_view source) {
  std::vector<DatasetRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fail = [&](const std::string& msg) {
      return Error(ErrorKind::parse,
                   std::string(source) + ":" + std::to_string(lineno) + ": " + msg);
    };
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw fail(e.what());
    }
    if (!j.is_object()) throw fail("expected a JSON object");
    DatasetRecord r;
    for (auto [key, field] : {std::pair{"utterance", &r.utterance},
                              std::pair{"template_name", &r.template_name},
                              std::pair{"query", &r.query}}) {
      if (!j.contains(key) || !j[key].is_string()) throw fail(std::string("missing '") + key + "'");
      *field = j[key].get<std::string>();
    }
    if (j.contains("id") && j["id"].is_string()) r.id = j["id"].get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t export_training_text(const std::vector<DatasetRecord>& records, std::ostream& sink) {
  for (const auto& r : records) {
    if (r.query.find(kClose) != std::string::npos)
      throw Error(ErrorKind::validation,
                  "query of '" + r.template_name + "' contains </code> and cannot be fenced");
    if (r.utterance.find('\n') != std::string::npos ||
        r.utterance.find(kAnswer) != std::string::npos)
      throw Error(ErrorKind::validation,
                  "utterance of '" + r.template_name + "' collides with the answer marker");
  }
  for (const auto& r : records) {
    sink << kQuestion << r.utterance << kAnswer << r.query << kClose << '\n';
    check_sink(sink);
  }
  return records.size();
}

std::vector<DatasetRecord> parse_training_text(std::string_view text) {
  std::vector<DatasetRecord> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text.substr(pos, kQuestion.size()) != kQuestion)
      throw Error(ErrorKind::parse,
                  "training text: expected 'question: ' at offset " + std::to_string(pos));
    std::size_t u = pos + kQuestion.size();
    std::size_t a = text.find(kAnswer, u);
    std::size_t nl = text.find('\n', u);
    if (a == std::string_view::npos || (nl != std::string_view::npos && nl < a))
      throw Error(ErrorKind::parse,
                  "training text: missing answer marker after offset " + std::to_string(pos));
    std::size_t q = a + kAnswer.size();
    std::size_t end = text.find(kClose, q);
    if (end == std::string_view::npos)
      throw Error(ErrorKind::parse, "training text: unterminated <code> fence");
    DatasetRecord r;
    r.utterance = std::string(text.substr(u, a - u));
    r.query = std::string(text.substr(q, end - q));
    out.push_back(std::move(r));
    pos = end + kClose.size();
    if (pos < text.size() && text[pos] == '\n') ++pos;
  }
  return out;
}

std::string build_fewshot_prompt(std::string_view template_id,
                                 const std::vector<DatasetRecord>& train,
                                 std::string_view target_utterance, std::size_t n_examples,
                                 std::uint64_t seed) {
  std::vector<const DatasetRecord*> pool;
  for (const auto& r : train) {
    if (r.template_name == template_id) pool.push_back(&r);
  }
  if (pool.size() < n_examples)
    throw Error(ErrorKind::validation,
                "template '" + std::string(template_id) + "' has " + std::to_string(pool.size()) +
                    " training records, " + std::to_string(n_examples) + " needed");
  auto ranked = rank(pool, template_id, seed);
  ranked.resize(n_examples);
  // Present the sample in training-set order.
  std::sort(ranked.begin(), ranked.end());

  std::string out;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    auto n = std::to_string(i + 1);
    out += "Utterance " + n + ":\n" + ranked[i]->utterance + "\nSPARQL " + n + ":\n" +
           ranked[i]->query + "\n\n";
  }
  out += "Utterance:\n";
  out += target_utterance;
  return out;
}

}  // namespace lexsparql
