#include "lexsparql/generalize.hpp"

#include <algorithm>
#include <ostream>
#include <regex>
#include <set>

#include <json.hpp>

#include "lexsparql/error.hpp"
#include "lexsparql/hash.hpp"
#include "lexsparql/query.hpp"
#include "lexsparql/tokenizer.hpp"

namespace lexsparql {

DatasetRecord GeneralizationRecord::as_record() const {
  return {utterance, "ask_rw_" + base_template, query, id};
}

namespace {

std::string regex_escape(std::string_view s) {
  static const std::string special = R"(\^$.|?*+()[]{}/)";
  std::string out;
  for (char c : s) {
    if (special.find(c) != std::string::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Template text -> anchored regex, with the capture order of its
// placeholders. Only {identifier} is a placeholder; other braces are literal.
std::regex variant_regex(std::string_view text, std::vector<std::string>& names) {
  static const std::regex placeholder(R"(\{([A-Za-z_][A-Za-z0-9_]*)\})");
  std::string re;
  const std::string s(text);
  std::size_t last = 0;
  for (std::sregex_iterator it(s.begin(), s.end(), placeholder), stop; it != stop; ++it) {
    const auto at = static_cast<std::size_t>(it->position());
    re += regex_escape(text.substr(last, at - last));
    std::string name = (*it)[1].str();
    auto seen = std::find(names.begin(), names.end(), name);
    if (seen == names.end()) {
      names.push_back(name);
      re += "(.+?)";
    } else {
      re += "\\" + std::to_string(seen - names.begin() + 1);
    }
    last = at + static_cast<std::size_t>(it->length());
  }
  re += regex_escape(text.substr(last));
  return std::regex(re);
}

std::size_t matching_brace(const std::vector<Token>& toks, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < toks.size(); ++i) {
    if (toks[i].kind == TokenKind::brace_open) ++depth;
    if (toks[i].kind == TokenKind::brace_close && --depth == 0) return i;
  }
  throw Error(ErrorKind::validation, "unbalanced braces in query");
}

bool is_var(const Token& t, std::string_view name) {
  return t.kind == TokenKind::variable && t.text.size() == name.size() + 1 &&
         std::string_view(t.text).substr(1) == name;
}

struct Link {
  RdfTerm predicate;
  bool answer_is_subject = false;
};

std::optional<Link> answer_link(const Query& q, std::string_view var) {
  for (const auto& el : q.where.elements) {
    if (el.kind != GroupElement::Kind::triples) continue;
    for (const auto& t : el.triples) {
      if (t.predicate.is_var) continue;
      if (t.object.is_var && t.object.var == var) return Link{t.predicate.term, false};
      if (t.subject.is_var && t.subject.var == var) return Link{t.predicate.term, true};
    }
  }
  return std::nullopt;
}

std::string first_value(QueryExecutor& ex, const std::string& q) {
  auto rs = ex.execute(q);
  if (rs.is_boolean() || rs.rows.empty()) return {};
  const auto& row = rs.rows.front();
  auto it = row.find("v");
  return it == row.end() ? std::string() : it->second.value;
}

std::string answer_label(const RdfTerm& value, const ResultRow* row, std::string_view var,
                         QueryExecutor& ex, const std::string& lang) {
  if (value.is_literal()) return value.value;
  if (row) {
    auto it = row->find(std::string(var) + "Label");
    if (it != row->end() && it->second.value != value.local_name()) return it->second.value;
  }
  auto subject = sparql_constant(value);
  auto label = first_value(ex, "SELECT ?v WHERE { " + subject + " rdfs:label ?v . FILTER(LANG(?v) = '" +
                                   lang + "') }");
  if (label.empty()) label = first_value(ex, "SELECT ?v WHERE { " + subject + " wikibase:lemma ?v }");
  return label.empty() ? value.local_name() : label;
}

}  // namespace

Bindings recover_bindings(const DatasetRecord& record, const TemplateSpec& spec) {
  // Tags used only by the query (a language code, say) come from the query
  // text; those values are escaped, so the utterance wins where both exist.
  Bindings from_query;
  {
    std::vector<std::string> names;
    std::regex re = variant_regex(spec.body, names);
    std::smatch m;
    if (std::regex_match(record.query, m, re))
      for (std::size_t i = 0; i < names.size(); ++i) from_query[names[i]] = m[i + 1].str();
  }
  for (const auto& variant : spec.variants) {
    std::vector<std::string> names;
    std::regex re = variant_regex(variant, names);
    std::smatch m;
    if (!std::regex_match(record.utterance, m, re)) continue;
    Bindings b;
    for (std::size_t i = 0; i < names.size(); ++i) b[names[i]] = m[i + 1].str();
    for (const auto& [k, v] : from_query) b.emplace(k, v);
    bool complete = std::all_of(spec.tag_schema.begin(), spec.tag_schema.end(),
                                [&](const Tag& t) { return b.count(t.name) > 0; });
    if (!complete) continue;
    try {
      if (render_query(spec, b) == record.query) return b;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorKind::validation,
              spec.id + ": utterance does not match any variant: " + record.utterance);
}

std::string sparql_constant(const RdfTerm& term) {
  if (term.is_iri() && term.value.rfind(iri::kWd, 0) == 0) {
    auto local = term.local_name();
    static const std::regex entity("[QLP][0-9]+(-[FS][0-9]+)?");
    if (std::regex_match(local, entity)) return "wd:" + local;
  }
  return term.to_ntriples();
}

std::string ask_query(std::string_view select_query, std::string_view answer_var,
                      const RdfTerm& answer_value) {
  auto toks = tokenize(select_query);
  if (has_lexical_error(toks)) throw Error(ErrorKind::validation, "query has a lexical error");
  std::size_t select = toks.size();
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].is_keyword("SELECT")) {
      select = i;
      break;
    }
  }
  if (select == toks.size()) throw Error(ErrorKind::validation, "query is not a SELECT");
  std::size_t open = select;
  while (open < toks.size() && toks[open].kind != TokenKind::brace_open) ++open;
  if (open == toks.size()) throw Error(ErrorKind::validation, "query has no group pattern");
  std::size_t close = matching_brace(toks, open);

  // Byte ranges dropped from the body: the label service blocks, each with
  // the indentation and line break in front of it.
  std::vector<std::pair<std::size_t, std::size_t>> cut;
  for (std::size_t i = open + 1; i < close; ++i) {
    if (!toks[i].is_keyword("SERVICE")) continue;
    std::size_t b = i;
    while (b < close && toks[b].kind != TokenKind::brace_open) ++b;
    std::size_t e = matching_brace(toks, b);
    std::size_t from = toks[i].offset;
    while (from > 0 && (select_query[from - 1] == ' ' || select_query[from - 1] == '\t')) --from;
    if (from > 0 && select_query[from - 1] == '\n') --from;
    cut.emplace_back(from, toks[e].offset + 1);
    i = e;
  }

  const std::string constant = sparql_constant(answer_value);
  std::string body;
  std::size_t pos = toks[open].offset;
  std::size_t end = toks[close].offset + 1;
  std::size_t ci = 0;
  for (std::size_t i = open; i <= close; ++i) {
    const auto& t = toks[i];
    if (ci < cut.size() && t.offset >= cut[ci].first) {
      body.append(select_query.substr(pos, cut[ci].first - pos));
      pos = cut[ci].second;
      while (i + 1 <= close && toks[i + 1].offset < pos) ++i;
      ++ci;
      continue;
    }
    if (is_var(t, answer_var)) {
      body.append(select_query.substr(pos, t.offset - pos));
      body += constant;
      pos = t.offset + t.text.size();
    }
  }
  body.append(select_query.substr(pos, end - pos));

  std::string out(select_query.substr(0, toks[select].offset));
  out += "ASK WHERE " + body;
  return out;
}

GeneralizationRecord to_ask(const DatasetRecord& record, const TemplateSpec& spec,
                            const RdfTerm& answer_value, std::string_view answer_label,
                            bool negate) {
  if (!spec.ask_rewrite)
    throw Error(ErrorKind::validation, spec.id + ": no ASK rewrite rule for this template");
  Bindings b = recover_bindings(record, spec);
  b["answer"] = std::string(answer_label);
  GeneralizationRecord g;
  g.base_record_id = record.id;
  g.base_template = spec.id;
  g.utterance = substitute(spec.ask_rewrite->pattern, b, false, spec.id + " ask pattern");
  g.query = ask_query(record.query, spec.ask_rewrite->answer_var, answer_value);
  g.expected_truth = !negate;
  g.answer_value = answer_value;
  g.id = (record.id.empty() ? spec.id : record.id) + (negate ? "/neg" : "/pos");
  return g;
}

GeneralizationRun generalize_records(const Catalog& catalog,
                                     const std::vector<DatasetRecord>& records,
                                     QueryExecutor& executor,
                                     const GeneralizationConfig& config) {
  GeneralizationRun run;
  for (const auto& rec : records) {
    const TemplateSpec& spec = catalog.at(rec.template_name);
    if (!spec.ask_rewrite) {
      ++run.skipped_no_rule;
      continue;
    }
    const std::string& var = spec.ask_rewrite->answer_var;
    ResultSet gold = executor.execute(rec.query);
    std::map<RdfTerm, const ResultRow*> answers;
    for (const auto& row : gold.rows) {
      auto it = row.find(var);
      if (it != row.end()) answers.emplace(it->second, &row);
    }
    if (answers.empty()) {
      ++run.skipped_empty_gold;
      continue;
    }
    const std::uint64_t key = mix(config.seed, record_hash(rec));
    auto pick = std::next(answers.begin(), static_cast<long>(key % answers.size()));
    auto label = answer_label(pick->first, pick->second, var, executor, config.label_language);
    auto pos = to_ask(rec, spec, pick->first, label, false);
    if (!executor.execute(pos.query).truth)
      throw Error(ErrorKind::validation, pos.id + ": positive ASK evaluates false: " + pos.query);
    run.records.push_back(std::move(pos));

    if (config.negatives_per_positive == 0) continue;
    auto link = answer_link(parse_query(rec.query), var);
    if (!link) {
      run.missing_negatives += config.negatives_per_positive;
      continue;
    }
    const std::string p = sparql_constant(link->predicate);
    std::string pattern = link->answer_is_subject ? "?v " + p + " ?o" : "?s " + p + " ?v";
    ResultSet pool = executor.execute("SELECT DISTINCT ?v WHERE { " + pattern +
                                      " } ORDER BY ?v LIMIT " +
                                      std::to_string(config.candidate_limit));
    std::vector<std::pair<std::uint64_t, RdfTerm>> candidates;
    for (const auto& row : pool.rows) {
      auto it = row.find("v");
      if (it == row.end() || answers.count(it->second)) continue;
      candidates.emplace_back(keyed_hash(key, it->second.to_ntriples()), it->second);
    }
    std::sort(candidates.begin(), candidates.end());
    std::size_t made = 0;
    for (const auto& [h, value] : candidates) {
      if (made == config.negatives_per_positive) break;
      auto l = answer_label(value, nullptr, var, executor, config.label_language);
      auto neg = to_ask(rec, spec, value, l, true);
      // The gold answers may have been cut by a row limit; a value that
      // still satisfies the pattern is not a negative.
      if (executor.execute(neg.query).truth) continue;
      if (made > 0) neg.id += std::to_string(made + 1);
      run.records.push_back(std::move(neg));
      ++made;
    }
    run.missing_negatives += config.negatives_per_positive - made;
  }
  return run;
}

const char* to_string(NativeHeld n) {
  switch (n) {
    case NativeHeld::test: return "test";
    case NativeHeld::train: return "train";
    case NativeHeld::drop: return "drop";
  }
  return "?";
}

std::optional<NativeHeld> parse_native_held(std::string_view s) {
  if (s == "test") return NativeHeld::test;
  if (s == "train") return NativeHeld::train;
  if (s == "drop") return NativeHeld::drop;
  return std::nullopt;
}

SplitResult holdout_by_shape(const Catalog& catalog, const std::vector<DatasetRecord>& records,
                             AnswerShape held, const std::vector<DatasetRecord>& transformed,
                             NativeHeld native) {
  bool in_catalog = std::any_of(catalog.specs().begin(), catalog.specs().end(),
                                [&](const TemplateSpec& s) { return s.answer_shape == held; });
  if (!in_catalog && transformed.empty())
    throw Error(ErrorKind::validation,
                std::string("held shape '") + to_string(held) + "' is absent from the catalog");

  SplitResult out;
  std::map<std::string, std::size_t> seq;
  auto add_test = [&](DatasetRecord r) {
    auto& c = out.per_template_counts[r.template_name];
    ++c.second;
    if (r.id.empty()) r.id = r.template_name + "#" + std::to_string(++seq[r.template_name]);
    out.test.push_back(std::move(r));
  };
  for (const auto& r : records) {
    const TemplateSpec& spec = catalog.at(r.template_name);
    bool is_held = spec.answer_shape == held;
    if (!is_held || native == NativeHeld::train) {
      DatasetRecord t = r;
      t.id.clear();
      ++out.per_template_counts[t.template_name].first;
      out.train.push_back(std::move(t));
    } else if (native == NativeHeld::test) {
      add_test(r);
    }
  }
  for (const auto& r : transformed) add_test(r);

  if (native != NativeHeld::train) {
    std::set<std::string> train_names;
    for (const auto& r : out.train) train_names.insert(r.template_name);
    for (const auto& r : out.test) {
      if (train_names.count(r.template_name))
        throw Error(ErrorKind::validation,
                    "template '" + r.template_name + "' appears in both train and test");
    }
  }
  return out;
}

std::size_t export_generalization_jsonl(const std::vector<GeneralizationRecord>& records,
                                        std::ostream& sink) {
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["utterance"] = r.utterance;
    j["query"] = r.query;
    j["expected_truth"] = r.expected_truth;
    sink << j.dump() << '\n';
    if (!sink) throw Error(ErrorKind::io, "write to output stream failed");
  }
  return records.size();
}

}  // namespace lexsparql
