#include "lexsparql/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "lexsparql/text.hpp"

namespace lexsparql {

const char* to_string(TokenKind k) {
  switch (k) {
    case TokenKind::keyword: return "keyword";
    case TokenKind::variable: return "variable";
    case TokenKind::iri: return "iri";
    case TokenKind::prefixed_name: return "prefixed_name";
    case TokenKind::literal: return "literal";
    case TokenKind::language_tag: return "language_tag";
    case TokenKind::brace_open: return "brace_open";
    case TokenKind::brace_close: return "brace_close";
    case TokenKind::paren: return "paren";
    case TokenKind::punctuation: return "punctuation";
    case TokenKind::other: return "other";
    case TokenKind::comment: return "comment";
    case TokenKind::error: return "error";
  }
  return "?";
}

namespace {

// Sorted for binary search.
constexpr auto kKeywords = std::to_array<std::string_view>({
    "ABS",       "AS",         "ASC",        "ASK",
    "AVG",        "BASE",      "BIND",       "BNODE",      "BOUND",
    "BY",         "CEIL",      "COALESCE",   "CONCAT",     "CONSTRUCT",
    "CONTAINS",   "COUNT",     "DATATYPE",   "DAY",        "DESC",
    "DESCRIBE",   "DISTINCT",  "ENCODE_FOR_URI", "EXISTS", "FILTER",
    "FLOOR",      "FROM",      "GRAPH",      "GROUP",      "GROUP_CONCAT",
    "HAVING",     "HOURS",     "IF",         "IN",         "IRI",
    "ISBLANK",    "ISIRI",     "ISLITERAL",  "ISNUMERIC",  "ISURI",
    "LANG",       "LANGMATCHES", "LCASE",    "LIMIT",      "MAX",
    "MD5",        "MIN",       "MINUS",      "MINUTES",    "MONTH",
    "NAMED",      "NOT",       "NOW",        "OFFSET",     "OPTIONAL",
    "ORDER",      "PREFIX",    "RAND",       "REDUCED",    "REGEX",
    "REPLACE",    "ROUND",     "SAMETERM",   "SAMPLE",     "SECONDS",
    "SELECT",     "SEPARATOR", "SERVICE",    "SILENT",     "STR",
    "STRAFTER",   "STRBEFORE", "STRDT",      "STRENDS",    "STRLANG",
    "STRLEN",     "STRSTARTS", "SUBSTR",     "SUM",        "UCASE",
    "UNDEF",      "UNION",     "URI",        "VALUES",     "WHERE",
    "YEAR",       "YEARS",
});
static_assert(std::is_sorted(kKeywords.begin(), kKeywords.end()));

bool word_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80;
}

bool var_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

bool iri_char(unsigned char c) {
  return c > 0x20 && c != '<' && c != '>' && c != '"' && c != '{' &&
         c != '}' && c != '|' && c != '^' && c != '`' && c != '\\';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    while (pos_ < src_.size()) {
      unsigned char c = src_[pos_];
      if (std::isspace(c)) {
        ++pos_;
        continue;
      }
      start_ = pos_;
      lex_one(c);
    }
    return std::move(out_);
  }

 private:
  void emit(TokenKind kind) {
    out_.push_back({kind, std::string(src_.substr(start_, pos_ - start_)), start_});
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void lex_one(unsigned char c) {
    if (c == '#') {
      while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      return emit(TokenKind::comment);
    }
    if ((c == '?' || c == '$') && var_char(peek(1))) {
      ++pos_;
      while (pos_ < src_.size() && var_char(src_[pos_])) ++pos_;
      return emit(TokenKind::variable);
    }
    if (c == '<') return lex_angle();
    if (c == '\'' || c == '"') return lex_string(static_cast<char>(c));
    if (c == '@' && !out_.empty() && out_.back().kind == TokenKind::literal &&
        out_.back().offset + out_.back().text.size() == pos_ &&
        std::isalpha(static_cast<unsigned char>(peek(1)))) {
      ++pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              (src_[pos_] == '-' &&
               std::isalnum(static_cast<unsigned char>(peek(1))))))
        ++pos_;
      return emit(TokenKind::language_tag);
    }
    if (c == '{') {
      ++pos_;
      return emit(TokenKind::brace_open);
    }
    if (c == '}') {
      ++pos_;
      return emit(TokenKind::brace_close);
    }
    if (c == '(' || c == ')') {
      ++pos_;
      return emit(TokenKind::paren);
    }
    if (std::isdigit(c) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return lex_number();
    }
    if (std::isalpha(c) || c == '_' || c == ':' || c >= 0x80) return lex_word();
    lex_punct(c);
  }

  void lex_angle() {
    std::size_t j = pos_ + 1;
    while (j < src_.size() && iri_char(src_[j])) ++j;
    if (j < src_.size() && src_[j] == '>') {
      pos_ = j + 1;
      return emit(TokenKind::iri);
    }
    ++pos_;
    if (peek() == '=') ++pos_;
    emit(TokenKind::punctuation);
  }

  void lex_string(char q) {
    bool long_form = peek(1) == q && peek(2) == q;
    pos_ += long_form ? 3 : 1;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      if (c == q) {
        if (!long_form) {
          ++pos_;
          return emit(TokenKind::literal);
        }
        if (peek(1) == q && peek(2) == q) {
          pos_ += 3;
          return emit(TokenKind::literal);
        }
      }
      ++pos_;
    }
    pos_ = src_.size();
    emit(TokenKind::error);
  }

  void lex_number() {
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') &&
          std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      pos_ += 2;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    emit(TokenKind::literal);
  }

  void lex_word() {
    bool colon = false;
    while (pos_ < src_.size()) {
      unsigned char c = src_[pos_];
      if (word_char(c)) {
        ++pos_;
      } else if (c == ':') {
        colon = true;
        ++pos_;
      } else if (c == '.' && colon && pos_ + 1 < src_.size() &&
                 word_char(src_[pos_ + 1])) {
        // Dots are legal inside a local name but never at its end.
        ++pos_;
      } else {
        break;
      }
    }
    if (colon) return emit(TokenKind::prefixed_name);
    std::string_view w = src_.substr(start_, pos_ - start_);
    if (text::iequals(w, "true") || text::iequals(w, "false"))
      return emit(TokenKind::literal);
    if (w == "a" || is_sparql_keyword(w)) return emit(TokenKind::keyword);
    emit(TokenKind::other);
  }

  void lex_punct(unsigned char c) {
    static constexpr std::array<std::string_view, 6> kTwo = {"^^", "!=", ">=",
                                                             "&&", "||", "<="};
    if (pos_ + 1 < src_.size()) {
      std::string_view two = src_.substr(pos_, 2);
      if (std::find(kTwo.begin(), kTwo.end(), two) != kTwo.end()) {
        pos_ += 2;
        return emit(TokenKind::punctuation);
      }
    }
    if (std::string_view(".;,*=<>!+-/^|[]?").find(static_cast<char>(c)) !=
        std::string_view::npos) {
      ++pos_;
      return emit(TokenKind::punctuation);
    }
    ++pos_;
    emit(TokenKind::other);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t start_ = 0;
  std::vector<Token> out_;
};

}  // namespace

bool is_sparql_keyword(std::string_view word) {
  std::string up = text::to_upper(word);
  return std::binary_search(kKeywords.begin(), kKeywords.end(),
                            std::string_view(up));
}

bool Token::is_keyword(std::string_view upper) const {
  return kind == TokenKind::keyword && text::iequals(text, upper);
}

std::vector<Token> tokenize(std::string_view text) {
  return Lexer(text).run();
}

bool has_lexical_error(const std::vector<Token>& tokens) {
  return std::any_of(tokens.begin(), tokens.end(),
                     [](const Token& t) { return t.kind == TokenKind::error; });
}

bool decode_string_literal(std::string_view t, std::string& out) {
  out.clear();
  if (t.size() < 2) return false;
  char q = t.front();
  if ((q != '\'' && q != '"') || t.back() != q) return false;
  std::size_t strip = (t.size() >= 6 && t[1] == q && t[2] == q) ? 3 : 1;
  std::string_view body = t.substr(strip, t.size() - 2 * strip);
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (++i >= body.size()) return false;
    switch (body[i]) {
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case 'b': out.push_back('\b'); break;
      case 'f': out.push_back('\f'); break;
      case '"': out.push_back('"'); break;
      case '\'': out.push_back('\''); break;
      case '\\': out.push_back('\\'); break;
      default: return false;
    }
  }
  return true;
}

std::string escape_single_quoted(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace lexsparql
