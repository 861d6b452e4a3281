#ifndef LEXSPARQL_TOKENIZER_HPP
#define LEXSPARQL_TOKENIZER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexsparql {

enum class TokenKind {
  keyword,
  variable,
  iri,
  prefixed_name,
  literal,
  language_tag,
  brace_open,
  brace_close,
  paren,
  punctuation,
  other,
  comment,
  error,  // lexical error, e.g. an unterminated string literal
};

const char* to_string(TokenKind k);

struct Token {
  TokenKind kind = TokenKind::other;
  std::string text;  // exact source slice
  std::size_t offset = 0;

  bool is_keyword(std::string_view upper) const;
  bool is(TokenKind k, std::string_view t) const {
    return kind == k && text == t;
  }
};

// Lexes SPARQL text. Never throws: malformed input surfaces as error tokens.
// Whitespace is not tokenized; offsets locate every token in the input, so
// the input is recoverable from the token list plus the gaps between tokens.
std::vector<Token> tokenize(std::string_view text);

bool has_lexical_error(const std::vector<Token>& tokens);

// Decodes the body of a string literal token (quotes removed, escapes
// resolved). Returns false for malformed literals.
bool decode_string_literal(std::string_view token_text, std::string& out);

// Escapes a value for embedding between single quotes.
std::string escape_single_quoted(std::string_view value);

bool is_sparql_keyword(std::string_view word);

}  // namespace lexsparql

#endif
