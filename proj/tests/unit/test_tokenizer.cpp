#include <gtest/gtest.h>

#include "lexsparql/tokenizer.hpp"

using namespace lexsparql;

TEST(Tokenizer, KindsOfGenderQueryTokens) {
  auto toks = tokenize("SELECT ?lexeme WHERE { VALUES ?lemma {'Apfel'@de} . ?l wdt:P5185 <urn:x> }");
  ASSERT_GE(toks.size(), 14u);
  EXPECT_EQ(toks[0].kind, TokenKind::keyword);
  EXPECT_EQ(toks[1].kind, TokenKind::variable);
  EXPECT_EQ(toks[3].kind, TokenKind::brace_open);
  EXPECT_TRUE(toks[4].is_keyword("VALUES"));
  EXPECT_EQ(toks[7].kind, TokenKind::literal);
  EXPECT_EQ(toks[7].text, "'Apfel'");
  EXPECT_EQ(toks[8].kind, TokenKind::language_tag);
  EXPECT_EQ(toks[12].kind, TokenKind::prefixed_name);
  EXPECT_EQ(toks[13].kind, TokenKind::iri);
}

TEST(Tokenizer, OffsetsRecoverSource) {
  std::string src = "ASK  {\n ?s ?p \"a\\\"b\"@en-GB # note\n}";
  auto toks = tokenize(src);
  for (const auto& t : toks) EXPECT_EQ(src.substr(t.offset, t.text.size()), t.text);
  EXPECT_EQ(toks.back().kind, TokenKind::brace_close);
}

TEST(Tokenizer, CommentsAndErrors) {
  auto toks = tokenize("SELECT ?x # { not a brace\n WHERE");
  ASSERT_EQ(toks.size(), 4u);
  EXPECT_EQ(toks[2].kind, TokenKind::comment);
  EXPECT_FALSE(has_lexical_error(toks));
  EXPECT_TRUE(has_lexical_error(tokenize("SELECT ?x WHERE { ?x ?p 'open")));
}

TEST(Tokenizer, KeywordsAreCaseInsensitive) {
  auto toks = tokenize("select Distinct");
  EXPECT_TRUE(toks[0].is_keyword("SELECT"));
  EXPECT_TRUE(toks[1].is_keyword("DISTINCT"));
  EXPECT_TRUE(is_sparql_keyword("optional"));
  EXPECT_FALSE(is_sparql_keyword("Apfel"));
}

TEST(Tokenizer, StringLiteralDecoding) {
  std::string out;
  ASSERT_TRUE(decode_string_literal("'l\\'eau'", out));
  EXPECT_EQ(out, "l'eau");
  ASSERT_TRUE(decode_string_literal("\"a\\nb\\\\\"", out));
  EXPECT_EQ(out, "a\nb\\");
  ASSERT_TRUE(decode_string_literal("'''multi\nline'''", out));
  EXPECT_EQ(out, "multi\nline");
  EXPECT_FALSE(decode_string_literal("'open", out));
  EXPECT_EQ(escape_single_quoted("l'eau\\"), "l\\'eau\\\\");
}
