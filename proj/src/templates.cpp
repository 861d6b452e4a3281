#include "lexsparql/templates.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <regex>

#include "lexsparql/error.hpp"
#include "lexsparql/hash.hpp"
#include "lexsparql/query.hpp"
#include "lexsparql/text.hpp"
#include "lexsparql/tokenizer.hpp"

namespace lexsparql {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::pair<std::string_view, E> (&table)[N],
                        std::string_view s) {
  for (const auto& [name, value] : table) {
    if (name == s) return value;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
const char* name_of(const std::pair<std::string_view, E> (&table)[N], E e) {
  for (const auto& [name, value] : table) {
    if (value == e) return name.data();
  }
  return "?";
}

constexpr std::pair<std::string_view, Paradigm> kParadigms[] = {
    {"google", Paradigm::google},
    {"property", Paradigm::property},
    {"multi_property", Paradigm::multi_property},
    {"language_independent", Paradigm::language_independent},
    {"rule_based", Paradigm::rule_based},
};

constexpr std::pair<std::string_view, TagKind> kTagKinds[] = {
    {"lemma", TagKind::lemma},
    {"language_code", TagKind::language_code},
    {"language_qid", TagKind::language_qid},
    {"property_value", TagKind::property_value},
    {"free_text", TagKind::free_text},
};

constexpr std::pair<std::string_view, AnswerShape> kShapes[] = {
    {"select", AnswerShape::select},
    {"ask", AnswerShape::ask},
};

bool valid_tag_name(std::string_view s) {
  if (s.empty() || !(std::islower(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::islower(c) || std::isdigit(c) || c == '_';
  });
}

bool valid_language_code(std::string_view s) {
  static const std::regex kCode("[a-z]{1,8}(-[a-z0-9]{1,8})*");
  return std::regex_match(s.begin(), s.end(), kCode);
}

std::string dummy_value(TagKind k) {
  switch (k) {
    case TagKind::language_code: return "en";
    case TagKind::language_qid: return "Q1860";
    case TagKind::property_value: return "Q1";
    default: return "x";
  }
}

std::string_view first_form_keyword(std::string_view body) {
  for (const auto& t : tokenize(body)) {
    if (t.kind == TokenKind::comment) continue;
    if (t.is_keyword("PREFIX") || t.is_keyword("BASE")) return {};
    if (t.kind == TokenKind::keyword) {
      if (t.is_keyword("SELECT")) return "select";
      if (t.is_keyword("ASK")) return "ask";
    }
    return {};
  }
  return {};
}

}  // namespace

const char* to_string(Paradigm p) { return name_of(kParadigms, p); }
const char* to_string(TagKind k) { return name_of(kTagKinds, k); }
const char* to_string(AnswerShape s) { return name_of(kShapes, s); }
std::optional<Paradigm> parse_paradigm(std::string_view s) { return lookup(kParadigms, s); }
std::optional<TagKind> parse_tag_kind(std::string_view s) { return lookup(kTagKinds, s); }
std::optional<AnswerShape> parse_answer_shape(std::string_view s) {
  return lookup(kShapes, s);
}

const Tag* TemplateSpec::tag(std::string_view name) const {
  for (const auto& t : tag_schema) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

std::vector<std::string> placeholders(std::string_view text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') continue;
    auto close = text.find('}', i + 1);
    if (close == std::string_view::npos) break;
    auto name = text.substr(i + 1, close - i - 1);
    if (valid_tag_name(name)) {
      if (std::find(out.begin(), out.end(), name) == out.end()) out.emplace_back(name);
      i = close;
    }
  }
  return out;
}

std::set<std::string> direct_properties(std::string_view sparql) {
  std::set<std::string> out;
  const std::string wdt(iri::kWdt);
  for (const auto& t : tokenize(sparql)) {
    std::string_view local;
    if (t.kind == TokenKind::prefixed_name && t.text.rfind("wdt:", 0) == 0) {
      local = std::string_view(t.text).substr(4);
    } else if (t.kind == TokenKind::iri && t.text.rfind("<" + wdt, 0) == 0) {
      local = std::string_view(t.text).substr(wdt.size() + 1);
      local.remove_suffix(1);
    } else {
      continue;
    }
    if (text::is_pid(local)) out.emplace(local);
  }
  return out;
}

std::string substitute(std::string_view text, const Bindings& bindings, bool escape,
                       std::string_view what) {
  std::string out;
  out.reserve(text.size() + 32);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '{') {
      auto close = text.find('}', i + 1);
      if (close != std::string_view::npos) {
        auto name = text.substr(i + 1, close - i - 1);
        if (valid_tag_name(name)) {
          auto it = bindings.find(name);
          if (it == bindings.end())
            throw Error(ErrorKind::validation,
                        std::string(what) + ": missing binding for tag '" +
                            std::string(name) + "'");
          out += escape ? escape_single_quoted(it->second) : it->second;
          i = close;
          continue;
        }
      }
    }
    out.push_back(text[i]);
  }
  return out;
}

std::string render_utterance(const TemplateSpec& spec, const Bindings& bindings,
                             std::size_t variant_index) {
  if (variant_index >= spec.variants.size())
    throw Error(ErrorKind::validation,
                spec.id + ": variant index " + std::to_string(variant_index) +
                    " out of range (" + std::to_string(spec.variants.size()) +
                    " variants)");
  return substitute(spec.variants[variant_index], bindings, false, spec.id);
}

std::string render_query(const TemplateSpec& spec, const Bindings& bindings) {
  for (const auto& name : placeholders(spec.body)) {
    const Tag* tag = spec.tag(name);
    auto it = bindings.find(name);
    if (!tag || it == bindings.end()) continue;
    if (tag->kind == TagKind::language_code && !valid_language_code(it->second))
      throw Error(ErrorKind::validation, spec.id + ": tag '" + name +
                                             "' is not a language code: '" +
                                             it->second + "'");
    if (tag->kind == TagKind::language_qid && !text::is_qid(it->second))
      throw Error(ErrorKind::validation,
                  spec.id + ": tag '" + name + "' is not a Q-id: '" + it->second + "'");
  }
  std::string out = substitute(spec.body, bindings, true, spec.id);
  if (has_lexical_error(tokenize(out)))
    throw Error(ErrorKind::validation,
                spec.id + ": bindings produce an untokenizable query");
  return out;
}

std::size_t pick_variant(const TemplateSpec& spec, std::uint64_t rng_seed,
                         std::uint64_t record_index) {
  if (spec.variants.size() <= 1) return 0;
  return keyed_hash(rng_seed, spec.id, record_index) % spec.variants.size();
}

DimensionProfile dimension_profile_of(const TemplateSpec& spec) {
  std::size_t n = direct_properties(spec.body).size();
  bool simple = spec.dimensions.complexity == Complexity::simple;
  if (simple && n > 1)
    throw Error(ErrorKind::validation,
                spec.id + ": declared simple but references " + std::to_string(n) +
                    " lexical properties");
  if (!simple && n < 2)
    throw Error(ErrorKind::validation,
                spec.id + ": declared complex but references " + std::to_string(n) +
                    " lexical propert" + (n == 1 ? "y" : "ies"));
  return spec.dimensions;
}

void validate_template(const TemplateSpec& spec) {
  auto fail = [&](const std::string& msg) {
    return Error(ErrorKind::validation, spec.id + ": " + msg);
  };
  if (spec.id.empty()) throw Error(ErrorKind::validation, "template without id");
  if (spec.variants.empty()) throw fail("no utterance variants");
  if (spec.body.empty()) throw fail("empty SPARQL body");

  std::set<std::string> names;
  for (const auto& t : spec.tag_schema) {
    if (!valid_tag_name(t.name)) throw fail("invalid tag name '" + t.name + "'");
    if (!names.insert(t.name).second) throw fail("duplicate tag '" + t.name + "'");
  }
  for (const auto& v : spec.variants) {
    for (const auto& p : placeholders(v)) {
      if (!names.count(p)) throw fail("placeholder {" + p + "} not in tag schema");
    }
  }
  for (const auto& p : placeholders(spec.body)) {
    if (!names.count(p)) throw fail("placeholder {" + p + "} not in tag schema");
  }
  if (spec.ask_rewrite) {
    for (const auto& p : placeholders(spec.ask_rewrite->pattern)) {
      if (p != "answer" && !names.count(p))
        throw fail("rewrite placeholder {" + p + "} not in tag schema");
    }
    if (spec.answer_shape != AnswerShape::select)
      throw fail("ASK rewrite declared on a non-SELECT template");
  }

  Bindings dummy;
  for (const auto& t : spec.tag_schema) dummy[t.name] = dummy_value(t.kind);
  std::string rendered = substitute(spec.body, dummy, true, spec.id);
  auto toks = tokenize(rendered);
  if (has_lexical_error(toks)) throw fail("body fails tokenization");
  int depth = 0;
  for (const auto& t : toks) {
    if (t.kind == TokenKind::brace_open) ++depth;
    if (t.kind == TokenKind::brace_close && --depth < 0) break;
  }
  if (depth != 0) throw fail("unbalanced braces in body");

  auto form = first_form_keyword(rendered);
  if (form != to_string(spec.answer_shape))
    throw fail(std::string("answer shape '") + to_string(spec.answer_shape) +
               "' does not match the query form");

  Query parsed;
  try {
    parsed = parse_query(rendered);
  } catch (const Error& e) {
    throw fail(std::string("body rejected by the query parser: ") + e.what());
  }
  if (spec.ask_rewrite) {
    const auto& proj = parsed.projection;
    if (std::find(proj.begin(), proj.end(), spec.ask_rewrite->answer_var) == proj.end())
      throw fail("rewrite answer variable ?" + spec.ask_rewrite->answer_var +
                 " is not projected");
  }

  auto props = direct_properties(spec.body);
  if (!spec.properties_used.empty() && spec.properties_used != props)
    throw fail("declared properties differ from the wdt: properties in the body");
  dimension_profile_of(spec);

  if (!spec.population.empty()) {
    Query pop;
    try {
      pop = parse_query(spec.population);
    } catch (const Error& e) {
      throw fail(std::string("population query rejected: ") + e.what());
    }
    if (pop.form != Query::Form::select) throw fail("population query must be a SELECT");
    if (!pop.order.empty() || pop.limit || pop.offset)
      throw fail("population query must not carry ORDER BY / LIMIT / OFFSET; paging adds them");
    const auto& cols = pop.select_all ? pop.variables : pop.projection;
    for (const auto& t : spec.tag_schema) {
      if (std::find(cols.begin(), cols.end(), t.name) == cols.end())
        throw fail("population query does not project tag ?" + t.name);
    }
  }
}

namespace {

enum class Section { header, variants, sparql, population, ask_rewrite };

std::string join_body(std::vector<std::string>& lines) {
  while (!lines.empty() && text::trim(lines.back()).empty()) lines.pop_back();
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out.push_back('\n');
    out += lines[i];
  }
  return out;
}

}  // namespace

Catalog Catalog::load(std::istream& in, std::string_view source) {
  Catalog cat;
  std::optional<TemplateSpec> cur;
  std::size_t start_line = 0;
  Section section = Section::header;
  std::vector<std::string> body, population;
  std::string line;
  std::size_t lineno = 0;

  auto locus = [&](std::size_t l) { return std::string(source) + ":" + std::to_string(l); };
  auto perr = [&](const std::string& msg) {
    return Error(ErrorKind::parse, locus(lineno) + ": " + msg);
  };
  auto finish = [&]() {
    if (!cur) return;
    cur->body = join_body(body);
    cur->population = join_body(population);
    body.clear();
    population.clear();
    try {
      validate_template(*cur);
    } catch (const Error& e) {
      throw Error(e.kind(), locus(start_line) + ": " + e.what());
    }
    cat.add(std::move(*cur), locus(start_line));
    cur.reset();
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("=== ", 0) == 0) {
      finish();
      cur.emplace();
      cur->id = std::string(text::trim(std::string_view(line).substr(4)));
      if (cur->id.empty()) throw perr("template id missing");
      start_line = lineno;
      section = Section::header;
      continue;
    }
    if (line.rfind("--- ", 0) == 0) {
      if (!cur) throw perr("section outside a template");
      auto name = text::trim(std::string_view(line).substr(4));
      if (name == "variants") section = Section::variants;
      else if (name == "sparql") section = Section::sparql;
      else if (name == "population") section = Section::population;
      else if (name == "ask_rewrite") {
        section = Section::ask_rewrite;
        cur->ask_rewrite.emplace();
      } else throw perr("unknown section '" + std::string(name) + "'");
      continue;
    }
    switch (section) {
      case Section::sparql:
        body.push_back(line);
        continue;
      case Section::population:
        population.push_back(line);
        continue;
      case Section::variants: {
        auto v = text::trim(line);
        if (!v.empty()) cur->variants.emplace_back(v);
        continue;
      }
      default:
        break;
    }
    auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    if (!cur) throw perr("content before the first '=== id' line");
    auto colon = trimmed.find(':');
    if (colon == std::string_view::npos) throw perr("expected 'key: value'");
    auto key = text::trim(trimmed.substr(0, colon));
    auto value = std::string(text::trim(trimmed.substr(colon + 1)));
    if (section == Section::ask_rewrite) {
      if (key == "answer_var") cur->ask_rewrite->answer_var = value;
      else if (key == "pattern") cur->ask_rewrite->pattern = value;
      else throw perr("unknown rewrite key '" + std::string(key) + "'");
      continue;
    }
    if (key == "paradigm") {
      auto p = parse_paradigm(value);
      if (!p) throw perr("unknown paradigm '" + value + "'");
      cur->paradigm = *p;
    } else if (key == "dimensions") {
      auto d = parse_dimensions(value);
      if (!d) throw perr("bad dimensions '" + value + "'");
      cur->dimensions = *d;
    } else if (key == "answer") {
      auto s = parse_answer_shape(value);
      if (!s) throw perr("bad answer shape '" + value + "'");
      cur->answer_shape = *s;
    } else if (key == "tags") {
      for (const auto& item : text::split_ws(value)) {
        auto c = item.find(':');
        if (c == std::string::npos) throw perr("tag '" + item + "' lacks a kind");
        auto kind = parse_tag_kind(item.substr(c + 1));
        if (!kind) throw perr("unknown tag kind in '" + item + "'");
        cur->tag_schema.push_back({item.substr(0, c), *kind});
      }
    } else if (key == "properties") {
      for (const auto& p : text::split_ws(value)) {
        if (!text::is_pid(p)) throw perr("bad property id '" + p + "'");
        cur->properties_used.insert(p);
      }
    } else if (key == "reconstructed") {
      cur->reconstructed = value == "yes" || value == "true";
    } else if (key == "note") {
      cur->note = value;
    } else {
      throw perr("unknown key '" + std::string(key) + "'");
    }
  }
  finish();
  return cat;
}

Catalog Catalog::load_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw Error(ErrorKind::io, "catalog directory '" + dir + "' not found");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".tpl") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  Catalog cat;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw Error(ErrorKind::io, "cannot read '" + f.string() + "'");
    cat.merge(load(in, f.string()));
  }
  return cat;
}

void Catalog::add(TemplateSpec spec, std::string_view locus) {
  if (by_id_.count(spec.id))
    throw Error(ErrorKind::validation,
                std::string(locus) + ": duplicate template id '" + spec.id + "'");
  by_id_.emplace(spec.id, specs_.size());
  specs_.push_back(std::move(spec));
}

void Catalog::merge(Catalog other) {
  for (auto& s : other.specs_) add(std::move(s), "catalog");
}

const TemplateSpec* Catalog::find(std::string_view id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &specs_[it->second];
}

const TemplateSpec& Catalog::at(std::string_view id) const {
  if (const auto* s = find(id)) return *s;
  throw Error(ErrorKind::lookup, "unknown template '" + std::string(id) + "'");
}

std::map<Paradigm, std::size_t> Catalog::paradigm_counts() const {
  std::map<Paradigm, std::size_t> out;
  for (const auto& s : specs_) ++out[s.paradigm];
  return out;
}

std::vector<std::string> check_against_registry(const Catalog& catalog,
                                                const Registry& registry) {
  std::vector<std::string> problems;
  for (const auto& s : catalog.specs()) {
    for (const auto& pid : direct_properties(s.body)) {
      if (!registry.knows(pid))
        problems.push_back(s.id + ": property " + pid + " is not in the registry");
    }
  }
  return problems;
}

}  // namespace lexsparql
