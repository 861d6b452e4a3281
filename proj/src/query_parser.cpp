#include <algorithm>
#include <set>

#include "lexsparql/error.hpp"
#include "lexsparql/query.hpp"
#include "lexsparql/text.hpp"

namespace lexsparql {

namespace {

Error parse_error(const std::string& msg, const Token* at) {
  std::string where = at ? " at offset " + std::to_string(at->offset) + " near '" +
                               at->text.substr(0, 40) + "'"
                         : " at end of query";
  return Error(ErrorKind::parse, "SPARQL parse error: " + msg + where);
}

RdfTerm expand_prefixed(const Token& t, const PrefixMap& prefixes) {
  auto colon = t.text.find(':');
  std::string_view pfx(t.text.data(), colon);
  if (pfx == "_") throw UnsupportedFeature("blank node label");
  auto it = prefixes.find(pfx);
  if (it == prefixes.end())
    throw parse_error("undeclared prefix '" + std::string(pfx) + "'", &t);
  return RdfTerm::make_iri(it->second + t.text.substr(colon + 1));
}

}  // namespace

bool read_term(const std::vector<Token>& tokens, std::size_t& i,
               const PrefixMap& prefixes, RdfTerm& out) {
  if (i >= tokens.size()) return false;
  const Token& t = tokens[i];
  switch (t.kind) {
    case TokenKind::iri:
      out = RdfTerm::make_iri(t.text.substr(1, t.text.size() - 2));
      ++i;
      return true;
    case TokenKind::prefixed_name:
      out = expand_prefixed(t, prefixes);
      ++i;
      return true;
    case TokenKind::literal: {
      const std::string xsd(iri::kXsd);
      char c = t.text.front();
      if (c == '\'' || c == '"') {
        std::string body;
        if (!decode_string_literal(t.text, body))
          throw parse_error("bad string escape", &t);
        ++i;
        std::string lang, dt;
        if (i < tokens.size() && tokens[i].kind == TokenKind::language_tag) {
          lang = text::to_lower(tokens[i].text.substr(1));
          ++i;
        } else if (i + 1 < tokens.size() &&
                   tokens[i].is(TokenKind::punctuation, "^^")) {
          ++i;
          RdfTerm dtt;
          if (!read_term(tokens, i, prefixes, dtt) || !dtt.is_iri())
            throw parse_error("datatype IRI expected", i < tokens.size() ? &tokens[i] : nullptr);
          dt = dtt.value;
          if (dt == xsd + "string") dt.clear();
        }
        out = RdfTerm::make_literal(std::move(body), std::move(lang), std::move(dt));
        return true;
      }
      if (text::iequals(t.text, "true") || text::iequals(t.text, "false")) {
        out = RdfTerm::make_boolean(text::iequals(t.text, "true"));
        ++i;
        return true;
      }
      std::string dt = "integer";
      if (t.text.find_first_of("eE") != std::string::npos) dt = "double";
      else if (t.text.find('.') != std::string::npos) dt = "decimal";
      out = RdfTerm::make_literal(t.text, {}, xsd + dt);
      ++i;
      return true;
    }
    default:
      return false;
  }
}

namespace {

const std::set<std::string, std::less<>> kSupportedFunctions = {
    "STR",      "LANG",      "LANGMATCHES", "STRLEN",  "REGEX",
    "LCASE",    "UCASE",     "CONTAINS",    "STRSTARTS", "STRENDS",
    "SUBSTR",   "BOUND",     "ISIRI",       "ISURI",   "ISLITERAL",
    "STRAFTER", "STRBEFORE", "CONCAT",      "DATATYPE",
};

const std::set<std::string, std::less<>> kAggregates = {
    "COUNT", "SUM", "MIN", "MAX", "AVG", "SAMPLE", "GROUP_CONCAT"};

class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (auto& t : tokenize(text)) {
      if (t.kind == TokenKind::comment) continue;
      if (t.kind == TokenKind::error) throw parse_error("lexical error", &t);
      toks_.push_back(std::move(t));
    }
    prefixes_ = default_prefixes();
  }

  Query run() {
    prologue();
    Query q;
    if (at_keyword("SELECT")) {
      ++i_;
      q.form = Query::Form::select;
      if (at_keyword("DISTINCT")) {
        q.distinct = true;
        ++i_;
      } else if (at_keyword("REDUCED")) {
        ++i_;
      }
      if (at(TokenKind::punctuation, "*")) {
        q.select_all = true;
        ++i_;
      } else {
        while (cur() && cur()->kind == TokenKind::variable) {
          q.projection.push_back(var_name(*cur()));
          note_var(q.projection.back());
          ++i_;
        }
        if (at(TokenKind::paren, "(")) throw UnsupportedFeature("SELECT expression");
        if (q.projection.empty()) throw parse_error("projection expected", cur());
      }
    } else if (at_keyword("ASK")) {
      ++i_;
      q.form = Query::Form::ask;
    } else if (at_keyword("CONSTRUCT") || at_keyword("DESCRIBE")) {
      throw UnsupportedFeature(text::to_upper(cur()->text));
    } else {
      throw parse_error("SELECT or ASK expected", cur());
    }
    if (at_keyword("FROM")) throw UnsupportedFeature("FROM");
    if (at_keyword("WHERE")) ++i_;
    query_ = &q;
    q.where = group();
    modifiers(q);
    if (cur()) {
      if (at_keyword("VALUES")) throw UnsupportedFeature("trailing VALUES");
      throw parse_error("unexpected trailing input", cur());
    }
    q.variables = vars_;
    return q;
  }

 private:
  const Token* cur() const { return i_ < toks_.size() ? &toks_[i_] : nullptr; }
  bool at(TokenKind k, std::string_view text) const {
    return cur() && cur()->kind == k && cur()->text == text;
  }
  bool at_keyword(std::string_view kw) const {
    return cur() && cur()->is_keyword(kw);
  }
  void expect(TokenKind k, std::string_view text) {
    if (!at(k, text)) throw parse_error("'" + std::string(text) + "' expected", cur());
    ++i_;
  }
  static std::string var_name(const Token& t) { return t.text.substr(1); }
  void note_var(const std::string& v) {
    if (std::find(vars_.begin(), vars_.end(), v) == vars_.end()) vars_.push_back(v);
  }

  void prologue() {
    for (;;) {
      if (at_keyword("PREFIX")) {
        ++i_;
        if (!cur() || cur()->kind != TokenKind::prefixed_name ||
            cur()->text.back() != ':')
          throw parse_error("prefix name expected", cur());
        std::string name = cur()->text.substr(0, cur()->text.size() - 1);
        ++i_;
        if (!cur() || cur()->kind != TokenKind::iri)
          throw parse_error("IRI expected", cur());
        prefixes_[name] = cur()->text.substr(1, cur()->text.size() - 2);
        ++i_;
      } else if (at_keyword("BASE")) {
        ++i_;
        if (!cur() || cur()->kind != TokenKind::iri)
          throw parse_error("IRI expected", cur());
        ++i_;
      } else {
        return;
      }
    }
  }

  GroupPattern group() {
    expect(TokenKind::brace_open, "{");
    GroupPattern g;
    for (;;) {
      const Token* t = cur();
      if (!t) throw parse_error("'}' expected", nullptr);
      if (t->kind == TokenKind::brace_close) {
        ++i_;
        break;
      }
      if (t->is(TokenKind::punctuation, ".")) {
        ++i_;
        continue;
      }
      if (t->is_keyword("OPTIONAL")) {
        ++i_;
        GroupElement e;
        e.kind = GroupElement::Kind::optional;
        e.group = std::make_shared<GroupPattern>(group());
        g.elements.push_back(std::move(e));
      } else if (t->is_keyword("FILTER")) {
        ++i_;
        GroupElement e;
        e.kind = GroupElement::Kind::filter;
        if (at_keyword("NOT") || at_keyword("EXISTS"))
          throw UnsupportedFeature("FILTER EXISTS");
        if (at(TokenKind::paren, "(")) {
          ++i_;
          e.expr = expression();
          expect(TokenKind::paren, ")");
        } else {
          e.expr = primary();
          if (e.expr->op != Expr::Op::call)
            throw parse_error("FILTER needs a bracketed expression", cur());
        }
        g.elements.push_back(std::move(e));
      } else if (t->is_keyword("VALUES")) {
        ++i_;
        g.elements.push_back(values());
      } else if (t->is_keyword("BIND")) {
        ++i_;
        expect(TokenKind::paren, "(");
        GroupElement e;
        e.kind = GroupElement::Kind::bind;
        e.expr = expression();
        if (!at_keyword("AS")) throw parse_error("AS expected", cur());
        ++i_;
        if (!cur() || cur()->kind != TokenKind::variable)
          throw parse_error("variable expected", cur());
        e.var = var_name(*cur());
        note_var(e.var);
        ++i_;
        expect(TokenKind::paren, ")");
        g.elements.push_back(std::move(e));
      } else if (t->is_keyword("SERVICE")) {
        ++i_;
        service();
      } else if (t->is_keyword("MINUS")) {
        throw UnsupportedFeature("MINUS");
      } else if (t->is_keyword("GRAPH")) {
        throw UnsupportedFeature("GRAPH");
      } else if (t->is_keyword("SELECT")) {
        throw UnsupportedFeature("subquery");
      } else if (t->kind == TokenKind::brace_open) {
        if (i_ + 1 < toks_.size() && toks_[i_ + 1].is_keyword("SELECT"))
          throw UnsupportedFeature("subquery");
        GroupElement e;
        e.kind = GroupElement::Kind::group;
        e.group = std::make_shared<GroupPattern>(group());
        if (at_keyword("UNION")) throw UnsupportedFeature("UNION");
        g.elements.push_back(std::move(e));
      } else if (t->is_keyword("UNION")) {
        throw UnsupportedFeature("UNION");
      } else {
        GroupElement e;
        e.kind = GroupElement::Kind::triples;
        triples_block(e.triples);
        g.elements.push_back(std::move(e));
      }
    }
    return g;
  }

  GroupElement values() {
    GroupElement e;
    e.kind = GroupElement::Kind::values;
    bool multi = false;
    if (cur() && cur()->kind == TokenKind::variable) {
      e.values.variables.push_back(var_name(*cur()));
      ++i_;
    } else if (at(TokenKind::paren, "(")) {
      multi = true;
      ++i_;
      while (cur() && cur()->kind == TokenKind::variable) {
        e.values.variables.push_back(var_name(*cur()));
        ++i_;
      }
      expect(TokenKind::paren, ")");
    } else {
      throw parse_error("VALUES variable expected", cur());
    }
    for (const auto& v : e.values.variables) note_var(v);
    expect(TokenKind::brace_open, "{");
    while (!at(TokenKind::brace_close, "}")) {
      if (!cur()) throw parse_error("'}' expected", nullptr);
      std::vector<std::optional<RdfTerm>> row;
      if (multi) {
        expect(TokenKind::paren, "(");
        while (!at(TokenKind::paren, ")")) row.push_back(data_value());
        ++i_;
        if (row.size() != e.values.variables.size())
          throw parse_error("VALUES row arity mismatch", cur());
      } else {
        row.push_back(data_value());
      }
      e.values.rows.push_back(std::move(row));
    }
    ++i_;
    return e;
  }

  std::optional<RdfTerm> data_value() {
    if (at_keyword("UNDEF")) {
      ++i_;
      return std::nullopt;
    }
    RdfTerm t;
    if (!read_term(toks_, i_, prefixes_, t))
      throw parse_error("data value expected", cur());
    return t;
  }

  void service() {
    if (at_keyword("SILENT")) ++i_;
    RdfTerm target;
    std::size_t save = i_;
    if (!read_term(toks_, i_, prefixes_, target) || !target.is_iri())
      throw parse_error("service IRI expected", save < toks_.size() ? &toks_[save] : nullptr);
    if (target.value != std::string(iri::kWikibase) + "label")
      throw UnsupportedFeature("SERVICE " + target.value);
    query_->label_service = true;
    GroupElement inner;
    std::vector<TriplePattern> triples;
    expect(TokenKind::brace_open, "{");
    while (!at(TokenKind::brace_close, "}")) {
      if (!cur()) throw parse_error("'}' expected", nullptr);
      if (at(TokenKind::punctuation, ".")) {
        ++i_;
        continue;
      }
      triples_block(triples);
    }
    ++i_;
    const std::string param = std::string(iri::kBd) + "serviceParam";
    const std::string language = std::string(iri::kWikibase) + "language";
    const std::string label = std::string(iri::kRdfs) + "label";
    for (const auto& tp : triples) {
      if (!tp.subject.is_var && tp.subject.term.value == param &&
          !tp.predicate.is_var && tp.predicate.term.value == language &&
          !tp.object.is_var && tp.object.term.is_literal()) {
        for (auto& l : text::split(tp.object.term.value, ',')) {
          auto lang = std::string(text::trim(l));
          if (!lang.empty() && lang.front() != '[') query_->label_languages.push_back(lang);
        }
      } else if (tp.subject.is_var && !tp.predicate.is_var &&
                 tp.predicate.term.value == label && tp.object.is_var) {
        query_->explicit_labels[tp.object.var] = tp.subject.var;
      } else {
        throw UnsupportedFeature("label service pattern");
      }
    }
  }

  PatternTerm pattern_term(bool predicate) {
    const Token* t = cur();
    if (!t) throw parse_error("term expected", nullptr);
    if (t->kind == TokenKind::variable) {
      ++i_;
      note_var(var_name(*t));
      return PatternTerm::variable(var_name(*t));
    }
    if (predicate && t->kind == TokenKind::keyword && t->text == "a") {
      ++i_;
      return PatternTerm::constant(RdfTerm::make_iri(std::string(iri::kRdf) + "type"));
    }
    if (t->is(TokenKind::punctuation, "[")) throw UnsupportedFeature("blank node");
    if (predicate && (t->is(TokenKind::punctuation, "^") ||
                      t->is(TokenKind::paren, "(") ||
                      t->is(TokenKind::punctuation, "!")))
      throw UnsupportedFeature("property path");
    if (t->is(TokenKind::paren, "(")) throw UnsupportedFeature("collection");
    RdfTerm term;
    if (!read_term(toks_, i_, prefixes_, term))
      throw parse_error("term expected", t);
    if (predicate && !term.is_iri()) throw parse_error("predicate must be an IRI", t);
    return PatternTerm::constant(std::move(term));
  }

  void reject_path() {
    if (!cur() || cur()->kind != TokenKind::punctuation) return;
    const std::string& s = cur()->text;
    if (s == "/" || s == "|" || s == "*" || s == "+" || s == "?" || s == "^")
      throw UnsupportedFeature("property path");
  }

  void triples_block(std::vector<TriplePattern>& out) {
    PatternTerm subject = pattern_term(false);
    for (;;) {
      PatternTerm pred = pattern_term(true);
      reject_path();
      for (;;) {
        PatternTerm obj = pattern_term(false);
        out.push_back({subject, pred, obj});
        if (at(TokenKind::punctuation, ",")) {
          ++i_;
          continue;
        }
        break;
      }
      if (at(TokenKind::punctuation, ";")) {
        while (at(TokenKind::punctuation, ";")) ++i_;
        if (at(TokenKind::punctuation, ".") || at(TokenKind::brace_close, "}")) break;
        continue;
      }
      break;
    }
    if (at(TokenKind::punctuation, ".")) ++i_;
    else if (!at(TokenKind::brace_close, "}") && cur() &&
             cur()->kind != TokenKind::keyword)
      throw parse_error("'.' or '}' expected", cur());
  }

  void modifiers(Query& q) {
    if (at_keyword("GROUP")) throw UnsupportedFeature("GROUP BY");
    if (at_keyword("HAVING")) throw UnsupportedFeature("HAVING");
    if (at_keyword("ORDER")) {
      ++i_;
      if (!at_keyword("BY")) throw parse_error("BY expected", cur());
      ++i_;
      for (;;) {
        if (at_keyword("ASC") || at_keyword("DESC")) {
          bool desc = at_keyword("DESC");
          ++i_;
          expect(TokenKind::paren, "(");
          q.order.push_back({expression(), desc});
          expect(TokenKind::paren, ")");
        } else if (cur() && cur()->kind == TokenKind::variable) {
          q.order.push_back({primary(), false});
        } else if (at(TokenKind::paren, "(")) {
          ++i_;
          q.order.push_back({expression(), false});
          expect(TokenKind::paren, ")");
        } else if (cur() && cur()->kind == TokenKind::keyword &&
                   kSupportedFunctions.count(text::to_upper(cur()->text))) {
          q.order.push_back({primary(), false});
        } else {
          break;
        }
      }
      if (q.order.empty()) throw parse_error("order key expected", cur());
    }
    for (int n = 0; n < 2; ++n) {
      if (at_keyword("LIMIT")) {
        ++i_;
        q.limit = integer();
      } else if (at_keyword("OFFSET")) {
        ++i_;
        q.offset = integer();
      }
    }
  }

  long long integer() {
    if (!cur() || cur()->kind != TokenKind::literal ||
        !std::all_of(cur()->text.begin(), cur()->text.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
      throw parse_error("integer expected", cur());
    long long v = std::stoll(cur()->text);
    ++i_;
    return v;
  }

  // Expressions, lowest precedence first.
  ExprPtr expression() {
    auto lhs = conjunction();
    while (at(TokenKind::punctuation, "||")) {
      ++i_;
      lhs = binary(Expr::Op::logical_or, lhs, conjunction());
    }
    return lhs;
  }

  ExprPtr conjunction() {
    auto lhs = relational();
    while (at(TokenKind::punctuation, "&&")) {
      ++i_;
      lhs = binary(Expr::Op::logical_and, lhs, relational());
    }
    return lhs;
  }

  ExprPtr relational() {
    auto lhs = additive();
    static const std::pair<std::string_view, Expr::Op> kOps[] = {
        {"=", Expr::Op::eq},  {"!=", Expr::Op::ne}, {"<", Expr::Op::lt},
        {">", Expr::Op::gt},  {"<=", Expr::Op::le}, {">=", Expr::Op::ge}};
    for (const auto& [sym, op] : kOps) {
      if (at(TokenKind::punctuation, sym)) {
        ++i_;
        return binary(op, lhs, additive());
      }
    }
    if (at_keyword("IN") || at_keyword("NOT")) throw UnsupportedFeature("IN");
    return lhs;
  }

  ExprPtr additive() {
    auto lhs = multiplicative();
    for (;;) {
      if (at(TokenKind::punctuation, "+")) {
        ++i_;
        lhs = binary(Expr::Op::add, lhs, multiplicative());
      } else if (at(TokenKind::punctuation, "-")) {
        ++i_;
        lhs = binary(Expr::Op::sub, lhs, multiplicative());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr multiplicative() {
    auto lhs = unary();
    for (;;) {
      if (at(TokenKind::punctuation, "*")) {
        ++i_;
        lhs = binary(Expr::Op::mul, lhs, unary());
      } else if (at(TokenKind::punctuation, "/")) {
        ++i_;
        lhs = binary(Expr::Op::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    if (at(TokenKind::punctuation, "!")) {
      ++i_;
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::logical_not;
      e->args.push_back(unary());
      return e;
    }
    if (at(TokenKind::punctuation, "-")) {
      ++i_;
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::negate;
      e->args.push_back(unary());
      return e;
    }
    if (at(TokenKind::punctuation, "+")) {
      ++i_;
      return unary();
    }
    return primary();
  }

  ExprPtr primary() {
    const Token* t = cur();
    if (!t) throw parse_error("expression expected", nullptr);
    if (t->is(TokenKind::paren, "(")) {
      ++i_;
      auto e = expression();
      expect(TokenKind::paren, ")");
      return e;
    }
    if (t->kind == TokenKind::variable) {
      ++i_;
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::variable;
      e->name = var_name(*t);
      note_var(e->name);
      return e;
    }
    if (t->kind == TokenKind::keyword) {
      std::string fn = text::to_upper(t->text);
      if (fn == "EXISTS" || fn == "NOT") throw UnsupportedFeature("EXISTS");
      if (kAggregates.count(fn)) throw UnsupportedFeature("aggregate " + fn);
      if (!kSupportedFunctions.count(fn)) throw UnsupportedFeature("function " + fn);
      ++i_;
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::call;
      e->name = fn;
      expect(TokenKind::paren, "(");
      if (!at(TokenKind::paren, ")")) {
        for (;;) {
          e->args.push_back(expression());
          if (at(TokenKind::punctuation, ",")) {
            ++i_;
            continue;
          }
          break;
        }
      }
      expect(TokenKind::paren, ")");
      check_arity(*e, t);
      return e;
    }
    RdfTerm term;
    if (read_term(toks_, i_, prefixes_, term)) {
      if (term.is_iri() && at(TokenKind::paren, "("))
        throw UnsupportedFeature("IRI function call");
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::constant;
      e->value = std::move(term);
      return e;
    }
    throw parse_error("expression expected", t);
  }

  static void check_arity(const Expr& e, const Token* at) {
    std::size_t n = e.args.size();
    bool ok = true;
    const std::string& f = e.name;
    if (f == "REGEX") ok = n == 2 || n == 3;
    else if (f == "SUBSTR") ok = n == 2 || n == 3;
    else if (f == "CONCAT") ok = true;
    else if (f == "LANGMATCHES" || f == "CONTAINS" || f == "STRSTARTS" ||
             f == "STRENDS" || f == "STRAFTER" || f == "STRBEFORE")
      ok = n == 2;
    else ok = n == 1;
    if (!ok) throw parse_error("wrong argument count for " + f, at);
    if (f == "BOUND" && e.args[0]->op != Expr::Op::variable)
      throw parse_error("BOUND needs a variable", at);
  }

  static ExprPtr binary(Expr::Op op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->args = {std::move(a), std::move(b)};
    return e;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  PrefixMap prefixes_;
  std::vector<std::string> vars_;
  Query* query_ = nullptr;
};

}  // namespace

Query parse_query(std::string_view text) { return Parser(text).run(); }

}  // namespace lexsparql
