#include "lexsparql/checks.hpp"

#include <optional>
#include <vector>

#include "lexsparql/error.hpp"
#include "lexsparql/text.hpp"
#include "lexsparql/tokenizer.hpp"

namespace lexsparql {

const char* to_string(CheckId id) {
  switch (id) {
    case CheckId::starts_with_form: return "starts_with_form";
    case CheckId::select_has_variable: return "select_has_variable";
    case CheckId::ask_has_where: return "ask_has_where";
    case CheckId::balanced_braces: return "balanced_braces";
    case CheckId::no_values: return "no_values";
    case CheckId::known_variable: return "known_variable";
    case CheckId::known_qitems_only: return "known_qitems_only";
  }
  return "?";
}

std::string check_label(CheckId id) {
  return "C" + std::to_string(static_cast<int>(id) + 1);
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::not_applicable: return "n/a";
  }
  return "?";
}

CheckProfile CheckProfile::appendix_c() { return CheckProfile{}; }

CheckProfile CheckProfile::gold_lint() {
  CheckProfile p;
  p.name = "gold_lint";
  p.enabled.reset(static_cast<std::size_t>(CheckId::no_values));
  p.enabled.reset(static_cast<std::size_t>(CheckId::known_qitems_only));
  return p;
}

CheckProfile CheckProfile::named(std::string_view name) {
  if (name == "appendix_c") return appendix_c();
  if (name == "gold_lint") return gold_lint();
  throw Error(ErrorKind::config, "unknown check profile '" + std::string(name) + "'");
}

namespace {

// Q-id carried by a single token, if any.
std::optional<std::string> qid_of(const Token& t) {
  std::string_view s = t.text;
  switch (t.kind) {
    case TokenKind::other:
      break;
    case TokenKind::prefixed_name:
      s = s.substr(s.find(':') + 1);
      break;
    case TokenKind::iri: {
      s = s.substr(1, s.size() - 2);
      auto cut = s.find_last_of("/#");
      if (cut != std::string_view::npos) s = s.substr(cut + 1);
      break;
    }
    default:
      return std::nullopt;
  }
  if (text::is_qid(s)) return std::string(s);
  return std::nullopt;
}

}  // namespace

std::set<std::string> extract_qitems(std::string_view query) {
  std::set<std::string> out;
  for (const auto& t : tokenize(query))
    if (auto q = qid_of(t)) out.insert(*q);
  return out;
}

CheckReport run_checks(std::string_view query, const CheckProfile& profile) {
  std::vector<Token> sig;
  for (auto& t : tokenize(query))
    if (t.kind != TokenKind::comment) sig.push_back(std::move(t));

  std::size_t i = 0;
  if (profile.allow_prefix_prologue) {
    for (;;) {
      if (i + 2 < sig.size() && sig[i].is_keyword("PREFIX") &&
          sig[i + 1].kind == TokenKind::prefixed_name &&
          sig[i + 2].kind == TokenKind::iri) {
        i += 3;
      } else if (i + 1 < sig.size() && sig[i].is_keyword("BASE") &&
                 sig[i + 1].kind == TokenKind::iri) {
        i += 2;
      } else {
        break;
      }
    }
  }

  bool is_select = i < sig.size() && sig[i].is_keyword("SELECT");
  bool is_ask = i < sig.size() && sig[i].is_keyword("ASK");

  std::array<Outcome, kCheckCount> r{};
  auto set = [&](CheckId id, bool ok) {
    r[static_cast<std::size_t>(id)] = ok ? Outcome::pass : Outcome::fail;
  };
  auto na = [&](CheckId id) {
    r[static_cast<std::size_t>(id)] = Outcome::not_applicable;
  };

  set(CheckId::starts_with_form, is_select || is_ask);

  if (is_select) {
    bool var = false;
    for (std::size_t j = i + 1; j < sig.size(); ++j) {
      if (sig[j].is_keyword("WHERE") || sig[j].kind == TokenKind::brace_open)
        break;
      if (sig[j].kind == TokenKind::variable) {
        var = true;
        break;
      }
    }
    set(CheckId::select_has_variable, var);
  } else {
    na(CheckId::select_has_variable);
  }

  if (is_ask) {
    bool ok = i + 1 < sig.size() && (sig[i + 1].is_keyword("WHERE") ||
                                     sig[i + 1].kind == TokenKind::brace_open);
    set(CheckId::ask_has_where, ok);
  } else {
    na(CheckId::ask_has_where);
  }

  long depth = 0;
  bool underflow = false;
  bool values = false;
  bool known_var = false;
  bool unknown_q = false;
  for (const auto& t : sig) {
    switch (t.kind) {
      case TokenKind::brace_open:
        ++depth;
        break;
      case TokenKind::brace_close:
        if (--depth < 0) underflow = true;
        break;
      case TokenKind::keyword:
        if (text::iequals(t.text, "VALUES")) values = true;
        break;
      case TokenKind::variable:
        if (profile.known_variables.count(text::to_lower(t.text.substr(1))))
          known_var = true;
        break;
      default:
        break;
    }
    if (auto q = qid_of(t); q && !profile.known_qitems.count(*q))
      unknown_q = true;
  }
  set(CheckId::balanced_braces, depth == 0 && !underflow);
  set(CheckId::no_values, !values);
  set(CheckId::known_variable, known_var);
  set(CheckId::known_qitems_only, !unknown_q);

  CheckReport report;
  for (std::size_t k = 0; k < kCheckCount; ++k) {
    if (!profile.enabled.test(k)) r[k] = Outcome::not_applicable;
    if (r[k] == Outcome::not_applicable) continue;
    ++report.c_all;
    if (r[k] == Outcome::pass) ++report.c_pass;
  }
  report.results = r;
  report.ratio = granularity_ratio(report);
  return report;
}

Rational granularity_ratio(const CheckReport& report) {
  if (report.c_all == 0) return Rational(0);
  return Rational(report.c_pass, report.c_all);
}

}  // namespace lexsparql
