#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sml/error.h"
#include "sml/rdf/graph.h"

namespace sml::rdf {

// Syntax error in a Turtle document or a query, with a 1-based position.
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorCode code, std::size_t line, std::size_t column,
              std::string token, std::string expected, std::string detail);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& token() const noexcept { return token_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string token_;
  std::string expected_;
};

namespace detail {

enum class TokenKind : std::uint8_t {
  END,
  IRI_REF,        // <...>, value = IRI text
  PREFIXED_NAME,  // prefix:local, value = prefix, local = local part
  BLANK_LABEL,    // _:label, value = label
  STRING,         // value = unescaped text
  LANG_TAG,       // @en, value = tag
  AT_KEYWORD,     // @prefix / @base, value = keyword
  DOUBLE_CARET,
  INTEGER,
  DECIMAL,
  DOUBLE,
  NAME,      // bare word: a, true, false, SELECT, ...
  VARIABLE,  // ?x / $x, value = name
  PUNCT,     // . ; , [ ] { } ( ) *
  OPERATOR,  // = != < <= > >=
};

struct Token {
  TokenKind kind = TokenKind::END;
  std::string value;
  std::string local;
  std::string raw;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is_punct(char c) const {
    return kind == TokenKind::PUNCT && value.size() == 1 && value[0] == c;
  }
  // Case-insensitive bare-word comparison.
  bool is_name(std::string_view word) const;
};

enum class Dialect : std::uint8_t { TURTLE, SPARQL };

// Tokenizes the whole input up front; the parsers are recursive descent over
// the token vector.
std::vector<Token> tokenize(std::string_view text, Dialect dialect);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == TokenKind::END; }
  bool accept_punct(char c);
  void expect_punct(char c, std::string_view context);

  [[noreturn]] void fail(const Token& at, std::string expected,
                         std::string detail = {}) const;
  [[noreturn]] void fail_code(ErrorCode code, const Token& at, std::string expected,
                              std::string detail) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string describe(const Token& t);

// True when the token can start an IRI, blank node, or literal term.
bool starts_term(const Token& t);

// Reads an IRI (IRIREF, prefixed name or the `a` keyword when `allow_a`).
Iri read_iri(TokenStream& in, const PrefixMap& prefixes, bool allow_a);

// Reads a literal: string with optional @lang / ^^datatype, bare numbers,
// true/false.
Literal read_literal(TokenStream& in, const PrefixMap& prefixes);

bool starts_literal(const Token& t);
bool starts_iri(const Token& t, bool allow_a);

// Handles `@prefix p: <ns> .` and `PREFIX p: <ns>` when the next token starts
// a directive; returns false otherwise.
bool read_directive(TokenStream& in, PrefixMap& prefixes);

}  // namespace detail
}  // namespace sml::rdf
