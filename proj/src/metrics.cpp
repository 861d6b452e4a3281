#include "lexsparql/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <sstream>

#include "lexsparql/containment.hpp"
#include "lexsparql/error.hpp"
#include "lexsparql/text.hpp"
#include "lexsparql/tokenizer.hpp"

namespace lexsparql {

Rational pass_at_k(const std::vector<bool>& correct_flags) {
  if (correct_flags.empty()) throw Error(ErrorKind::validation, "pass@k needs k >= 1 responses");
  auto n = std::count(correct_flags.begin(), correct_flags.end(), true);
  return Rational(n, static_cast<std::int64_t>(correct_flags.size()));
}

namespace {

// Decodes the code point starting at s[i]; sets len. Invalid bytes decode
// as themselves with length 1.
char32_t decode_utf8(std::string_view s, std::size_t i, std::size_t& len) {
  auto b = static_cast<unsigned char>(s[i]);
  int n = b < 0x80 ? 1 : (b >> 5) == 6 ? 2 : (b >> 4) == 14 ? 3 : (b >> 3) == 30 ? 4 : 1;
  if (i + n > s.size()) n = 1;
  char32_t cp = n == 1 ? b : (b & (0x7F >> n));
  for (int k = 1; k < n; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
  len = static_cast<std::size_t>(n);
  return cp;
}

// Python's str.isspace.
bool is_py_space(char32_t c) {
  return (c >= 0x09 && c <= 0x0D) || (c >= 0x1C && c <= 0x20) || c == 0x85 || c == 0xA0 ||
         c == 0x1680 || (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 ||
         c == 0x202F || c == 0x205F || c == 0x3000;
}

std::vector<std::string_view> py_split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0, start = 0;
  bool in_word = false;
  while (i < s.size()) {
    std::size_t len = 1;
    char32_t c = decode_utf8(s, i, len);
    if (is_py_space(c)) {
      if (in_word) out.push_back(s.substr(start, i - start));
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      start = i;
    }
    i += len;
  }
  if (in_word) out.push_back(s.substr(start));
  return out;
}

std::string_view py_rstrip(std::string_view s) {
  std::size_t end = 0, i = 0;
  while (i < s.size()) {
    std::size_t len = 1;
    char32_t c = decode_utf8(s, i, len);
    i += len;
    if (!is_py_space(c)) end = i;
  }
  return s.substr(0, end);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_dot_comma(char c) { return c == '.' || c == ','; }

// [\{-\~\[-\` -\&\(-\+\:-\@\/]
bool is_13a_symbol(char c) {
  return (c >= '{' && c <= '~') || (c >= '[' && c <= '`') || (c >= ' ' && c <= '&') ||
         (c >= '(' && c <= '+') || (c >= ':' && c <= '@') || c == '/';
}

using Ngrams = std::map<std::vector<std::string_view>, std::size_t>;

Ngrams count_ngrams(const std::vector<std::string_view>& toks) {
  Ngrams out;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t i = 0; i + n <= toks.size(); ++i) {
      ++out[std::vector<std::string_view>(toks.begin() + i, toks.begin() + i + n)];
    }
  }
  return out;
}

}  // namespace

std::string tokenize_13a(std::string_view input) {
  std::string line(input);
  line = text::replace_all(std::move(line), "<skipped>", "");
  line = text::replace_all(std::move(line), "-\n", "");
  line = text::replace_all(std::move(line), "\n", " ");
  if (line.find('&') != std::string::npos) {
    line = text::replace_all(std::move(line), "&quot;", "\"");
    line = text::replace_all(std::move(line), "&amp;", "&");
    line = text::replace_all(std::move(line), "&lt;", "<");
    line = text::replace_all(std::move(line), "&gt;", ">");
  }
  line = " " + line + " ";

  std::string a;
  a.reserve(line.size() * 2);
  for (char c : line) {
    if (is_13a_symbol(c)) {
      a.push_back(' ');
      a.push_back(c);
      a.push_back(' ');
    } else {
      a.push_back(c);
    }
  }
  // Each remaining rule is a two-character pattern substituted left to right
  // without overlap, as re.sub does.
  auto pass = [](const std::string& s, auto match, auto emit) {
    std::string out;
    out.reserve(s.size() + s.size() / 4);
    std::size_t i = 0;
    while (i < s.size()) {
      if (i + 1 < s.size() && match(s[i], s[i + 1])) {
        emit(out, s[i], s[i + 1]);
        i += 2;
      } else {
        out.push_back(s[i++]);
      }
    }
    return out;
  };
  a = pass(
      a, [](char x, char y) { return !is_digit(x) && is_dot_comma(y); },
      [](std::string& o, char x, char y) {
        o.push_back(x);
        o.push_back(' ');
        o.push_back(y);
        o.push_back(' ');
      });
  a = pass(
      a, [](char x, char y) { return is_dot_comma(x) && !is_digit(y); },
      [](std::string& o, char x, char y) {
        o.push_back(' ');
        o.push_back(x);
        o.push_back(' ');
        o.push_back(y);
      });
  a = pass(
      a, [](char x, char y) { return is_digit(x) && y == '-'; },
      [](std::string& o, char x, char y) {
        o.push_back(x);
        o.push_back(' ');
        o.push_back(y);
        o.push_back(' ');
      });

  std::string out;
  for (auto w : py_split(a)) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

BleuStats& BleuStats::operator+=(const BleuStats& o) {
  sys_len += o.sys_len;
  ref_len += o.ref_len;
  for (std::size_t n = 0; n < 4; ++n) {
    correct[n] += o.correct[n];
    total[n] += o.total[n];
  }
  return *this;
}

BleuStats bleu_sentence_stats(std::string_view candidate, std::string_view reference) {
  std::string hyp = tokenize_13a(py_rstrip(candidate));
  std::string ref = tokenize_13a(py_rstrip(reference));
  auto hyp_toks = py_split(hyp);
  auto ref_toks = py_split(ref);
  auto hyp_ngrams = count_ngrams(hyp_toks);
  auto ref_ngrams = count_ngrams(ref_toks);
  BleuStats s;
  s.sys_len = hyp_toks.size();
  s.ref_len = ref_toks.size();
  for (const auto& [gram, count] : hyp_ngrams) {
    std::size_t n = gram.size() - 1;
    s.total[n] += count;
    auto it = ref_ngrams.find(gram);
    if (it != ref_ngrams.end()) s.correct[n] += std::min(count, it->second);
  }
  return s;
}

double compute_bleu(const BleuStats& s) {
  double bp = 1.0;
  if (s.sys_len < s.ref_len)
    bp = s.sys_len > 0 ? std::exp(1.0 - static_cast<double>(s.ref_len) / s.sys_len) : 0.0;
  bool any = false;
  for (auto c : s.correct) any = any || c > 0;
  if (!any) return 0.0;
  std::array<double, 4> precisions{};
  double smooth = 1.0;
  for (std::size_t n = 0; n < 4; ++n) {
    if (s.total[n] == 0) break;
    if (s.correct[n] == 0) {
      smooth *= 2;
      precisions[n] = 100.0 / (smooth * s.total[n]);
    } else {
      precisions[n] = 100.0 * s.correct[n] / s.total[n];
    }
  }
  double sum = 0;
  for (double p : precisions) sum += p == 0.0 ? -9999999999.0 : std::log(p);
  return bp * std::exp(sum / 4);
}

double bleu_corpus(const std::vector<std::string>& candidates,
                   const std::vector<std::string>& references) {
  if (candidates.size() != references.size())
    throw Error(ErrorKind::validation,
                "BLEU: " + std::to_string(candidates.size()) + " candidates vs " +
                    std::to_string(references.size()) + " references");
  BleuStats total;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    total += bleu_sentence_stats(candidates[i], references[i]);
  return compute_bleu(total);
}

std::string extract_sparql(std::string_view response) {
  auto open = response.find("<code>");
  if (open != std::string_view::npos) {
    auto start = open + 6;
    auto close = response.find("</code>", start);
    auto body = response.substr(start, close == std::string_view::npos ? std::string_view::npos
                                                                       : close - start);
    return std::string(text::trim(body));
  }
  for (const auto& t : tokenize(response)) {
    if (t.is_keyword("SELECT") || t.is_keyword("ASK") || t.is_keyword("PREFIX"))
      return std::string(text::trim(response.substr(t.offset)));
  }
  return std::string(text::trim(response));
}

const char* to_string(Scenario s) {
  return s == Scenario::generalization ? "generalization" : "non_generalization";
}

std::optional<Scenario> parse_scenario(std::string_view s) {
  if (s == "generalization") return Scenario::generalization;
  if (s == "non_generalization") return Scenario::non_generalization;
  return std::nullopt;
}

RecordEvaluation evaluate_record(const DatasetRecord& gold,
                                 const std::vector<std::string>& responses,
                                 QueryExecutor& executor, const CheckProfile& profile,
                                 const EvalOptions& options) {
  if (responses.empty())
    throw Error(ErrorKind::validation, "record '" + gold.id + "' has no responses");
  RecordEvaluation ev;
  ev.record_id = gold.id;
  ev.responses = responses;
  ev.bleu_reference = gold.query;

  CheckProfile checks = profile;
  if (options.known_qitems_from_gold) {
    for (auto& q : extract_qitems(gold.query)) checks.known_qitems.insert(q);
  }

  Rational gran_sum;
  for (const auto& resp : responses) {
    std::string sparql = extract_sparql(resp);
    auto report = run_checks(sparql, checks);
    ev.response_granularity.push_back(report.ratio);
    gran_sum = gran_sum + report.ratio;
    ev.sparql.push_back(std::move(sparql));
  }
  ev.granularity = gran_sum / static_cast<std::int64_t>(responses.size());
  ev.bleu_candidate = ev.sparql.front();

  ResultSet expected;
  try {
    expected = executor.execute(gold.query);
  } catch (const Error& e) {
    ev.voided = true;
    ev.void_reason = e.what();
    return ev;
  }
  for (const auto& sparql : ev.sparql) {
    bool ok = false;
    std::string err;
    try {
      ok = contains_expected(executor.execute(sparql), expected, options.name_aligned);
    } catch (const Error& e) {
      err = e.what();
    }
    ev.correct_flags.push_back(ok);
    ev.response_errors.push_back(std::move(err));
  }
  ev.pass_at_k = pass_at_k(ev.correct_flags);
  return ev;
}

namespace {

void check_batch(const std::vector<DatasetRecord>& golds,
                 const std::vector<std::vector<std::string>>& responses) {
  if (golds.size() != responses.size())
    throw Error(ErrorKind::validation, "gold and response lists differ in length");
}

}  // namespace

std::vector<RecordEvaluation> evaluate_records_serial(
    const std::vector<DatasetRecord>& golds,
    const std::vector<std::vector<std::string>>& responses, QueryExecutor& executor,
    const CheckProfile& profile, const EvalOptions& options) {
  check_batch(golds, responses);
  std::vector<RecordEvaluation> out;
  out.reserve(golds.size());
  for (std::size_t i = 0; i < golds.size(); ++i)
    out.push_back(evaluate_record(golds[i], responses[i], executor, profile, options));
  return out;
}

std::vector<RecordEvaluation> evaluate_records_parallel(
    const std::vector<DatasetRecord>& golds,
    const std::vector<std::vector<std::string>>& responses, QueryExecutor& executor,
    const CheckProfile& profile, const EvalOptions& options) {
  check_batch(golds, responses);
  std::vector<RecordEvaluation> out(golds.size());
  std::vector<std::exception_ptr> errors(golds.size());
  const long n = static_cast<long>(golds.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = evaluate_record(golds[i], responses[i], executor, profile, options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

AggregateReport aggregate(const std::vector<RecordEvaluation>& evals, Scenario scenario, int k,
                          BleuMode mode) {
  AggregateReport r;
  r.scenario = scenario;
  r.k = k;
  Rational pass_sum, gran_sum;
  std::vector<std::string> cands, refs;
  for (const auto& e : evals) {
    if (e.voided) {
      ++r.n_voided;
      continue;
    }
    ++r.n_records;
    pass_sum = pass_sum + e.pass_at_k;
    gran_sum = gran_sum + e.granularity;
    std::string cand = e.bleu_candidate;
    if (mode == BleuMode::best_of_k) {
      double best = -1;
      for (const auto& s : e.sparql) {
        double b = compute_bleu(bleu_sentence_stats(s, e.bleu_reference));
        if (b > best) {
          best = b;
          cand = s;
        }
      }
    }
    cands.push_back(std::move(cand));
    refs.push_back(e.bleu_reference);
  }
  if (r.n_records == 0)
    throw Error(ErrorKind::validation,
                evals.empty() ? "nothing to aggregate" : "every record was voided");
  auto n = static_cast<std::int64_t>(r.n_records);
  r.mean_pass_at_k = pass_sum / n;
  r.mean_granularity = gran_sum / n;
  r.corpus_bleu = bleu_corpus(cands, refs);
  return r;
}

nlohmann::ordered_json report_to_json(const AggregateReport& r) {
  nlohmann::ordered_json j;
  j["scenario"] = to_string(r.scenario);
  j["k"] = r.k;
  j["mean_pass_at_k"] = r.mean_pass_at_k.to_double();
  j["mean_pass_at_k_exact"] = r.mean_pass_at_k.str();
  j["mean_granularity"] = r.mean_granularity.to_double();
  j["mean_granularity_exact"] = r.mean_granularity.str();
  j["corpus_bleu"] = r.corpus_bleu;
  j["n_records"] = r.n_records;
  j["n_voided"] = r.n_voided;
  j["check_profile"] = r.check_profile;
  j["bleu_signature"] = "nrefs:1|case:mixed|eff:no|tok:13a|smooth:exp";
  return j;
}

namespace {

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

AggregateReport report_from_json(const nlohmann::json& j) {
  try {
    AggregateReport r;
    auto sc = parse_scenario(j.at("scenario").get<std::string>());
    if (!sc) throw Error(ErrorKind::parse, "report: unknown scenario");
    r.scenario = *sc;
    r.k = j.at("k").get<int>();
    r.mean_pass_at_k = parse_rational(j.at("mean_pass_at_k_exact").get<std::string>());
    r.mean_granularity = parse_rational(j.at("mean_granularity_exact").get<std::string>());
    r.corpus_bleu = j.at("corpus_bleu").get<double>();
    r.n_records = j.at("n_records").get<std::size_t>();
    r.n_voided = j.at("n_voided").get<std::size_t>();
    r.check_profile = j.value("check_profile", "");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("report: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::parse, "report: bad exact ratio");
  }
}

std::string render_table(const std::vector<AggregateReport>& reports) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-20s %-4s %-8s %-15s %-7s %-9s %s\n", "Scenario", "k",
                "pass@k", "R_granularity", "BLEU", "records", "voided");
  os << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-20s %-4d %-8s %-15s %-7s %-9zu %zu\n",
                  to_string(r.scenario), r.k, fixed(r.mean_pass_at_k.to_double(), 2).c_str(),
                  fixed(r.mean_granularity.to_double(), 2).c_str(),
                  fixed(r.corpus_bleu, 1).c_str(), r.n_records, r.n_voided);
    os << line;
  }
  return os.str();
}

}  // namespace lexsparql
