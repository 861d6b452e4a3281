#include "support.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace testsupport {

namespace fs = std::filesystem;
using lexsparql::RdfTerm;
using lexsparql::ResultRow;
using lexsparql::ResultSet;
using lexsparql::Triple;

std::string data_dir() { return LEXSPARQL_TEST_DATA_DIR; }
std::string fixtures_dir() { return LEXSPARQL_TEST_FIXTURES_DIR; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_dir(const std::string& tag) {
  static int counter = 0;
  auto dir = fs::temp_directory_path() /
             ("lexsparql_" + tag + "_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

const char* const kApfelGenderQuery =
    "SELECT ?lexeme ?qitem ?lemma ?qitemLabel\n"
    "WHERE\n"
    "{\n"
    "  VALUES ?lemma {'Apfel'@de} .\n"
    "  ?lexeme wikibase:lemma ?lemma ;\n"
    "           wdt:P5185 ?qitem.\n"
    "  SERVICE wikibase:label { \n"
    "    bd:serviceParam wikibase:language 'en' \n"
    "  }\n"
    "}";

const char* const kFewShotPrompt =
    "Utterance 1:\n"
    "Apfel gender in German\n"
    "SPARQL 1:\n"
    "SELECT ?lexeme ?qitem ?lemma ?qitemLabel\n"
    "WHERE\n"
    "{\n"
    "  VALUES ?lemma {'Apfel'@de} .\n"
    "  ?lexeme wikibase:lemma ?lemma ;\n"
    "          wdt:P5185 ?qitem.\n"
    "  SERVICE wikibase:label { \n"
    "    bd:serviceParam wikibase:language 'en' \n"
    "  }\n"
    "}\n"
    "\n"
    "Utterance 2:\n"
    "medailon gender Czech\n"
    "SPARQL 2:\n"
    "SELECT ?lexeme ?qitem ?lemma ?qitemLabel\n"
    "WHERE\n"
    "{\n"
    "  VALUES ?lemma {'medailon'@cs} .\n"
    "  ?lexeme wikibase:lemma ?lemma ;\n"
    "          wdt:P5185 ?qitem.\n"
    "  SERVICE wikibase:label { \n"
    "    bd:serviceParam wikibase:language 'en' \n"
    "  }\n"
    "}\n"
    "\n"
    "Utterance:\n"
    "What is Probek\xC3\xB6rpers gender in German?";

std::string normalize_ws(const std::string& s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

lexsparql::Outcome outcome_of(char c) {
  switch (c) {
    case 'P': return lexsparql::Outcome::pass;
    case 'F': return lexsparql::Outcome::fail;
    default: return lexsparql::Outcome::not_applicable;
  }
}

// Expected columns are C1..C7: form, SELECT variable, ASK WHERE, braces,
// no VALUES, known variable, known Q-items.
const std::vector<CheckCase>& curated_check_cases() {
  static const std::vector<CheckCase> cases = {
      {"apfel_gender", kApfelGenderQuery, {}, "PP-PFPP", 5, 6},
      {"apfel_gender_without_values",
       "SELECT ?lexeme ?qitem ?lemma ?qitemLabel WHERE { ?lexeme wikibase:lemma 'Apfel'@de ; "
       "wdt:P5185 ?qitem . SERVICE wikibase:label { bd:serviceParam wikibase:language 'en' } }",
       {}, "PP-PPPP", 6, 6},
      {"ask_where", "ASK WHERE { ?lexeme wdt:P5185 wd:Q1775415 . }", {"Q1775415"}, "P-PPPPP",
       6, 6},
      {"ask_brace", "ASK { ?lexeme ?p ?o }", {}, "P-PPPPP", 6, 6},
      {"ask_missing_where", "ASK ?lexeme WHERE { }", {}, "P-FPPPP", 5, 6},
      {"ask_unknown_qitem", "ASK { ?lexeme wdt:P5185 wd:Q499327 }", {}, "P-PPPPF", 5, 6},
      {"ask_lowercase", "ask where { ?lemma ?p ?o }", {}, "P-PPPPP", 6, 6},
      {"ask_bare_variable", "ASK ?x", {}, "P-FPPFP", 4, 6},
      {"unbalanced_open", "SELECT ?lexeme WHERE { ?lexeme ?p ?o", {}, "PP-FPPP", 5, 6},
      {"unbalanced_close", "SELECT ?lexeme WHERE { ?lexeme ?p ?o } }", {}, "PP-FPPP", 5, 6},
      {"close_before_open", "SELECT ?lexeme WHERE } ?lexeme ?p ?o {", {}, "PP-FPPP", 5, 6},
      {"nested_balanced", "SELECT ?lexeme WHERE { OPTIONAL { ?lexeme ?p ?o } }", {}, "PP-PPPP",
       6, 6},
      {"brace_in_string", "SELECT ?lexeme WHERE { ?lexeme rdfs:label '}' }", {}, "PP-PPPP", 6,
       6},
      {"select_star", "SELECT * WHERE { ?lexeme ?p ?o }", {}, "PF-PPPP", 5, 6},
      {"select_no_projection", "SELECT WHERE { ?lexeme ?p ?o }", {}, "PF-PPPP", 5, 6},
      {"select_distinct", "SELECT DISTINCT ?lemma WHERE { ?x wikibase:lemma ?lemma }", {},
       "PP-PPPP", 6, 6},
      {"unknown_variables_only", "SELECT ?x WHERE { ?x ?y ?z }", {}, "PP-PPFP", 5, 6},
      {"known_variable_case_insensitive", "SELECT ?qitemLabel WHERE { ?s ?p ?qitemLabel }", {},
       "PP-PPPP", 6, 6},
      {"prefix_prologue",
       "PREFIX wd: <http://www.wikidata.org/entity/> SELECT ?lexeme WHERE { ?lexeme ?p wd:Q5 }",
       {}, "F--PPPF", 3, 5},
      {"free_text", "The answer is Apfel.", {}, "F--PPFP", 3, 5},
      {"empty", "", {}, "F--PPFP", 3, 5},
      {"values_select",
       "SELECT ?lemma WHERE { VALUES ?lemma {'Haus'@de} . ?lexeme wikibase:lemma ?lemma }", {},
       "PP-PFPP", 5, 6},
      {"values_lowercase", "select ?lemma where { values ?lemma {'a'@en} }", {}, "PP-PFPP", 5,
       6},
      {"values_in_string", "SELECT ?lemma WHERE { ?lexeme rdfs:comment 'VALUES' }", {},
       "PP-PPPP", 6, 6},
      {"values_in_comment", "SELECT ?lemma WHERE { ?lexeme ?p ?o } # VALUES", {}, "PP-PPPP", 6,
       6},
      {"known_qitems",
       "SELECT ?lexeme WHERE { ?lexeme dct:language wd:Q188 ; wdt:P5185 wd:Q1775415 }",
       {"Q188", "Q1775415"}, "PP-PPPP", 6, 6},
      {"one_unknown_qitem",
       "SELECT ?lexeme WHERE { ?lexeme dct:language wd:Q188 ; wdt:P5185 wd:Q1775415 }",
       {"Q188"}, "PP-PPPF", 5, 6},
      {"qitem_full_iri",
       "SELECT ?lexeme WHERE { ?lexeme <http://www.wikidata.org/prop/direct/P31> "
       "<http://www.wikidata.org/entity/Q42> }",
       {}, "PP-PPPF", 5, 6},
      {"qitem_in_string", "SELECT ?lexeme WHERE { ?lexeme rdfs:label 'Q42' }", {}, "PP-PPPP", 6,
       6},
      {"property_is_not_qitem", "SELECT ?lexeme WHERE { ?lexeme wdt:P5185 ?g }", {}, "PP-PPPP",
       6, 6},
      {"ask_everything_wrong", "ASK WHERE { VALUES ?lemma {'x'@en} . ?lexeme wdt:P5185 wd:Q1",
       {}, "P-PFFPF", 3, 6},
      {"leading_comment", "# find gender\n  SELECT ?lexeme WHERE { ?lexeme ?p ?o }", {},
       "PP-PPPP", 6, 6},
      {"select_lowercase", "select ?form where { ?lexeme ontolex:lexicalForm ?form }", {},
       "PP-PPPP", 6, 6},
      {"etymology_with_unbound_projection",
       "SELECT ?etonymLexeme ?qitemLanguageOfOrigin \n       ?etonym "
       "?qitemLanguageOfOriginLabel\nWHERE {\n  VALUES ?lemma {'color'@en} .\n  ?lexeme "
       "wikibase:lemma ?lemma ;\n          wdt:P5191 ?etonymLexeme.\n  ?etonymLexeme "
       "dct:language ?qitemOrigin;\n                wikibase:lemma ?etonym .\n  SERVICE "
       "wikibase:label { \n    bd:serviceParam wikibase:language 'en' \n  }\n}",
       {}, "PP-PFPP", 5, 6},
      {"ask_with_known_language", "ASK { ?lexeme dct:language wd:Q188 }", {"Q188"}, "P-PPPPP", 6,
       6},
      {"select_var_after_keyword_distinct_star",
       "SELECT DISTINCT * WHERE { ?lexeme ?p wd:Q7 }", {"Q7"}, "PF-PPPP", 5, 6},
  };
  return cases;
}

// ---------------------------------------------------------------------------

namespace {

const std::string kEx = "http://ex.org/";
const std::string kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";

RdfTerm iri(const std::string& local) { return RdfTerm::make_iri(kEx + local); }

std::vector<RdfTerm> object_pool() {
  std::vector<RdfTerm> out;
  for (int i = 0; i < 6; ++i) out.push_back(iri("s" + std::to_string(i)));
  out.push_back(RdfTerm::make_literal("a"));
  out.push_back(RdfTerm::make_literal("ab"));
  out.push_back(RdfTerm::make_literal("b"));
  out.push_back(RdfTerm::make_literal("a", "en"));
  out.push_back(RdfTerm::make_literal("b", "de"));
  for (int i = 1; i <= 3; ++i)
    out.push_back(RdfTerm::make_literal(std::to_string(i), {}, kXsdInteger));
  return out;
}

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool chance(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0, 1)(rng) < p;
}

std::string render(const GenTerm& t) {
  return t.is_var ? "?" + t.var : t.term.to_ntriples();
}

std::string render_filter(const GenFilter& f) {
  switch (f.kind) {
    case GenFilter::Kind::eq_const: return "FILTER(?" + f.var + " = " + f.term.to_ntriples() + ")";
    case GenFilter::Kind::ne_vars: return "FILTER(?" + f.var + " != ?" + f.var2 + ")";
    case GenFilter::Kind::strstarts:
      return "FILTER(STRSTARTS(STR(?" + f.var + "), \"" + f.text + "\"))";
    case GenFilter::Kind::lang_eq: return "FILTER(LANG(?" + f.var + ") = \"" + f.text + "\")";
    case GenFilter::Kind::is_iri: return "FILTER(ISIRI(?" + f.var + "))";
  }
  return {};
}

void collect_vars(const std::vector<GenTriple>& ts, std::vector<std::string>& out) {
  for (const auto& t : ts)
    for (const GenTerm* x : {&t.s, &t.p, &t.o})
      if (x->is_var && std::find(out.begin(), out.end(), x->var) == out.end())
        out.push_back(x->var);
}

}  // namespace

std::string GenQuery::to_sparql() const {
  std::ostringstream q;
  if (ask) {
    q << "ASK";
  } else {
    q << "SELECT " << (distinct ? "DISTINCT " : "");
    for (const auto& v : projection) q << "?" << v << " ";
  }
  q << " WHERE {\n";
  if (values) {
    q << "  VALUES ?" << values->first << " {";
    for (const auto& t : values->second) q << " " << t.to_ntriples();
    q << " }\n";
  }
  for (const auto& t : required)
    q << "  " << render(t.s) << " " << render(t.p) << " " << render(t.o) << " .\n";
  if (!optional.empty()) {
    q << "  OPTIONAL {";
    for (const auto& t : optional)
      q << " " << render(t.s) << " " << render(t.p) << " " << render(t.o) << " .";
    q << " }\n";
  }
  for (const auto& f : filters) q << "  " << render_filter(f) << "\n";
  q << "}";
  return q.str();
}

std::vector<Triple> random_graph(std::mt19937_64& rng, std::size_t max_triples) {
  const auto objects = object_pool();
  std::size_t n = std::uniform_int_distribution<std::size_t>(5, max_triples)(rng);
  std::set<std::string> seen;
  std::vector<Triple> out;
  for (std::size_t i = 0; i < n * 2 && out.size() < n; ++i) {
    Triple t{iri("s" + std::to_string(std::uniform_int_distribution<int>(0, 5)(rng))),
             iri("p" + std::to_string(std::uniform_int_distribution<int>(0, 3)(rng))),
             pick(rng, objects)};
    auto key = t.subject.to_ntriples() + t.predicate.to_ntriples() + t.object.to_ntriples();
    if (seen.insert(key).second) out.push_back(std::move(t));
  }
  return out;
}

GenQuery random_query(std::mt19937_64& rng, const std::vector<Triple>& graph) {
  static const std::vector<std::string> names = {"a", "b", "c", "d"};
  const auto objects = object_pool();
  GenQuery q;
  auto var = [](const std::string& n) {
    GenTerm t;
    t.is_var = true;
    t.var = n;
    return t;
  };
  auto constant = [](const RdfTerm& term) {
    GenTerm t;
    t.term = term;
    return t;
  };
  // Required patterns are built from graph triples with some positions
  // replaced by variables, so that joins usually have answers.
  std::size_t n_req = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  std::vector<std::string> subject_vars;
  for (std::size_t i = 0; i < n_req; ++i) {
    const Triple& base = pick(rng, graph);
    GenTriple t{constant(base.subject), constant(base.predicate), constant(base.object)};
    if (chance(rng, 0.8)) {
      t.s = var(pick(rng, names));
      subject_vars.push_back(t.s.var);
    }
    if (chance(rng, 0.2)) t.p = var(pick(rng, names) + "p");
    if (chance(rng, 0.6)) t.o = var(pick(rng, names));
    if (chance(rng, 0.1)) t.o = constant(pick(rng, objects));
    q.required.push_back(std::move(t));
  }
  std::vector<std::string> req_vars;
  collect_vars(q.required, req_vars);

  if (!req_vars.empty() && chance(rng, 0.35)) {
    const Triple& base = pick(rng, graph);
    GenTriple t{var(pick(rng, req_vars)), constant(base.predicate), var("e")};
    if (chance(rng, 0.3)) t.o = constant(base.object);
    q.optional.push_back(std::move(t));
  }

  if (!req_vars.empty() && chance(rng, 0.25)) {
    std::vector<RdfTerm> vals;
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    for (std::size_t i = 0; i < n; ++i) {
      RdfTerm t = chance(rng, 0.7) ? pick(rng, graph).subject : pick(rng, objects);
      if (std::find(vals.begin(), vals.end(), t) == vals.end()) vals.push_back(t);
    }
    q.values.emplace(pick(rng, req_vars), std::move(vals));
  }

  std::size_t n_filters = req_vars.empty() ? 0 : std::uniform_int_distribution<int>(0, 2)(rng);
  for (std::size_t i = 0; i < n_filters; ++i) {
    GenFilter f;
    f.var = pick(rng, req_vars);
    switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
      case 0:
        f.kind = GenFilter::Kind::eq_const;
        f.term = chance(rng, 0.5) ? pick(rng, graph).object : pick(rng, objects);
        break;
      case 1:
        if (subject_vars.size() < 2) continue;
        f.kind = GenFilter::Kind::ne_vars;
        f.var = pick(rng, subject_vars);
        f.var2 = pick(rng, subject_vars);
        break;
      case 2:
        f.kind = GenFilter::Kind::strstarts;
        f.text = pick(rng, std::vector<std::string>{"a", "http://ex.org/s1", "1", "b"});
        break;
      case 3:
        f.kind = GenFilter::Kind::lang_eq;
        f.text = pick(rng, std::vector<std::string>{"en", "de", ""});
        break;
      default:
        f.kind = GenFilter::Kind::is_iri;
        break;
    }
    q.filters.push_back(std::move(f));
  }

  q.ask = chance(rng, 0.15);
  if (!q.ask) {
    std::vector<std::string> all = req_vars;
    if (q.values && std::find(all.begin(), all.end(), q.values->first) == all.end())
      all.push_back(q.values->first);
    collect_vars(q.optional, all);
    if (all.empty()) {
      q.ask = true;
    } else {
      for (const auto& v : all)
        if (chance(rng, 0.6)) q.projection.push_back(v);
      if (q.projection.empty()) q.projection.push_back(all.front());
      q.distinct = chance(rng, 0.3);
    }
  }
  return q;
}

namespace {

using Assignment = std::map<std::string, RdfTerm>;

const RdfTerm* lookup(const Assignment& a, const GenTerm& t) {
  if (!t.is_var) return &t.term;
  auto it = a.find(t.var);
  return it == a.end() ? nullptr : &it->second;
}

bool ground_ok(const std::set<std::string>& graph_keys, const Assignment& a,
               const std::vector<GenTriple>& ts) {
  for (const auto& t : ts) {
    const RdfTerm* s = lookup(a, t.s);
    const RdfTerm* p = lookup(a, t.p);
    const RdfTerm* o = lookup(a, t.o);
    if (!s || !p || !o) continue;  // not yet ground
    if (!graph_keys.count(s->to_ntriples() + " " + p->to_ntriples() + " " + o->to_ntriples()))
      return false;
  }
  return true;
}

// Every total assignment of `vars` (extending `base`) over `domain` under
// which all patterns in `ts` hold and `extra` accepts.
void enumerate(const std::vector<std::string>& vars, std::size_t i, Assignment& a,
               const std::vector<RdfTerm>& domain, const std::set<std::string>& graph_keys,
               const std::vector<GenTriple>& ts,
               const std::function<bool(const Assignment&)>& extra,
               std::vector<Assignment>& out) {
  if (i == vars.size()) {
    if (ground_ok(graph_keys, a, ts) && extra(a)) out.push_back(a);
    return;
  }
  for (const auto& term : domain) {
    a[vars[i]] = term;
    if (ground_ok(graph_keys, a, ts))
      enumerate(vars, i + 1, a, domain, graph_keys, ts, extra, out);
  }
  a.erase(vars[i]);
}

bool filter_holds(const GenFilter& f, const Assignment& a) {
  auto it = a.find(f.var);
  if (it == a.end()) return false;
  const RdfTerm& v = it->second;
  switch (f.kind) {
    case GenFilter::Kind::eq_const: return v == f.term;
    case GenFilter::Kind::ne_vars: {
      auto jt = a.find(f.var2);
      return jt != a.end() && v != jt->second;
    }
    case GenFilter::Kind::strstarts: return v.value.rfind(f.text, 0) == 0;
    case GenFilter::Kind::lang_eq: return v.is_literal() && v.language == f.text;
    case GenFilter::Kind::is_iri: return v.is_iri();
  }
  return false;
}

std::string serialize(const Assignment& a, const std::vector<std::string>& projection) {
  std::string s;
  for (const auto& v : projection) {
    auto it = a.find(v);
    s += (it == a.end() ? std::string("UNDEF") : it->second.to_ntriples()) + "\t";
  }
  return s;
}

}  // namespace

std::vector<std::string> brute_force_rows(const std::vector<Triple>& graph, const GenQuery& q) {
  std::set<std::string> keys;
  std::vector<RdfTerm> domain;
  auto add_domain = [&](const RdfTerm& t) {
    if (std::find(domain.begin(), domain.end(), t) == domain.end()) domain.push_back(t);
  };
  for (const auto& t : graph) {
    keys.insert(t.subject.to_ntriples() + " " + t.predicate.to_ntriples() + " " +
                t.object.to_ntriples());
    add_domain(t.subject);
    add_domain(t.predicate);
    add_domain(t.object);
  }
  if (q.values)
    for (const auto& t : q.values->second) add_domain(t);
  for (const auto& f : q.filters)
    if (f.kind == GenFilter::Kind::eq_const) add_domain(f.term);

  std::vector<std::string> req_vars;
  collect_vars(q.required, req_vars);
  if (q.values && std::find(req_vars.begin(), req_vars.end(), q.values->first) == req_vars.end())
    req_vars.push_back(q.values->first);

  auto values_ok = [&](const Assignment& a) {
    if (!q.values) return true;
    const auto& allowed = q.values->second;
    return std::find(allowed.begin(), allowed.end(), a.at(q.values->first)) != allowed.end();
  };
  std::vector<Assignment> base;
  Assignment scratch;
  enumerate(req_vars, 0, scratch, domain, keys, q.required, values_ok, base);

  std::vector<Assignment> rows;
  for (const auto& mu : base) {
    std::vector<std::string> opt_vars;
    collect_vars(q.optional, opt_vars);
    opt_vars.erase(std::remove_if(opt_vars.begin(), opt_vars.end(),
                                  [&](const std::string& v) { return mu.count(v) > 0; }),
                   opt_vars.end());
    std::vector<Assignment> ext;
    if (!q.optional.empty()) {
      Assignment a = mu;
      enumerate(opt_vars, 0, a, domain, keys, q.optional,
                [](const Assignment&) { return true; }, ext);
    }
    if (ext.empty()) ext.push_back(mu);
    for (auto& e : ext) {
      bool ok = std::all_of(q.filters.begin(), q.filters.end(),
                            [&](const GenFilter& f) { return filter_holds(f, e); });
      if (ok) rows.push_back(std::move(e));
    }
  }

  if (q.ask) return {rows.empty() ? "false" : "true"};
  std::vector<std::string> out;
  for (const auto& r : rows) out.push_back(serialize(r, q.projection));
  std::sort(out.begin(), out.end());
  if (q.distinct) out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> result_rows(const ResultSet& rs,
                                     const std::vector<std::string>& projection) {
  if (rs.is_boolean()) return {rs.truth ? "true" : "false"};
  std::vector<std::string> out;
  for (const auto& row : rs.rows) {
    Assignment a(row.begin(), row.end());
    out.push_back(serialize(a, projection));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

bool brute_force_contains(const ResultSet& generated, const ResultSet& gold, bool name_aligned) {
  if (generated.is_boolean() || gold.is_boolean())
    return generated.is_boolean() && gold.is_boolean() && generated.truth == gold.truth;
  for (const ResultRow& want : gold.rows) {
    bool found = false;
    for (const ResultRow& have : generated.rows) {
      bool all = true;
      for (const auto& [name, value] : want) {
        bool hit = false;
        for (const auto& [hname, hvalue] : have) {
          if (hvalue == value && (!name_aligned || hname == name)) {
            hit = true;
            break;
          }
        }
        if (!hit) {
          all = false;
          break;
        }
      }
      if (all) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

ResultSet random_result_set(std::mt19937_64& rng, std::size_t max_rows, std::size_t max_vars,
                            std::size_t value_pool) {
  ResultSet rs;
  std::size_t nv = std::uniform_int_distribution<std::size_t>(1, max_vars)(rng);
  for (std::size_t i = 0; i < nv; ++i) rs.variables.push_back("v" + std::to_string(i));
  std::size_t nr = std::uniform_int_distribution<std::size_t>(0, max_rows)(rng);
  for (std::size_t r = 0; r < nr; ++r) {
    ResultRow row;
    for (const auto& v : rs.variables) {
      if (chance(rng, 0.15)) continue;
      auto k = std::uniform_int_distribution<std::size_t>(0, value_pool - 1)(rng);
      row[v] = k % 3 == 0 ? RdfTerm::make_iri(kEx + "x" + std::to_string(k))
                          : RdfTerm::make_literal("x" + std::to_string(k));
    }
    rs.rows.push_back(std::move(row));
  }
  return rs;
}

}  // namespace testsupport
