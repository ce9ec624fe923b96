#include "sml/rdf/syntax.h"

#include <cctype>
#include <sstream>

#include "sml/rdf/vocabulary.h"

namespace sml::rdf {

namespace {

std::string position_message(std::size_t line, std::size_t column,
                             const std::string& token, const std::string& expected,
                             const std::string& detail) {
  std::ostringstream out;
  out << "line " << line << ", column " << column << ": ";
  if (!detail.empty()) {
    out << detail;
  } else {
    out << "unexpected " << token;
  }
  if (!expected.empty()) out << "; expected " << expected;
  return out.str();
}

}  // namespace

SyntaxError::SyntaxError(ErrorCode code, std::size_t line, std::size_t column,
                         std::string token, std::string expected, std::string detail)
    : Error(code, position_message(line, column, token, expected, detail)),
      line_(line),
      column_(column),
      token_(std::move(token)),
      expected_(std::move(expected)) {}

namespace detail {

bool Token::is_name(std::string_view word) const {
  if (kind != TokenKind::NAME || value.size() != word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(value[i])) !=
        std::tolower(static_cast<unsigned char>(word[i]))) {
      return false;
    }
  }
  return true;
}

namespace {

bool is_name_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Lexer {
 public:
  Lexer(std::string_view text, Dialect dialect) : text_(text), dialect_(dialect) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        t.kind = TokenKind::END;
        t.raw = "end of input";
        out.push_back(std::move(t));
        return out;
      }
      std::size_t start = pos_;
      lex_one(t, out.empty() ? TokenKind::END : out.back().kind);
      t.raw = std::string(text_.substr(start, pos_ - start));
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    unsigned char c = static_cast<unsigned char>(text_[pos_++]);
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++column_;
    }
  }

  [[noreturn]] void fail(const std::string& detail, const std::string& expected = {},
                         ErrorCode code = ErrorCode::SYNTAX_ERROR) const {
    std::string token(text_.substr(pos_, 1));
    throw SyntaxError(code, line_, column_, "'" + token + "'", expected, detail);
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  void lex_one(Token& t, TokenKind previous) {
    char c = peek();
    bool sparql = dialect_ == Dialect::SPARQL;
    if (c == '<') {
      if (try_iri(t)) return;
      if (!sparql) fail("malformed IRI", "'>' closing an IRI reference");
      advance();
      t.kind = TokenKind::OPERATOR;
      t.value = "<";
      if (peek() == '=') {
        advance();
        t.value = "<=";
      }
      return;
    }
    if (sparql && (c == '>' || c == '=' || c == '!')) {
      advance();
      t.kind = TokenKind::OPERATOR;
      t.value = std::string(1, c);
      if (peek() == '=' && c != '=') {
        advance();
        t.value += '=';
      } else if (c == '!') {
        fail("'!' must be followed by '='", "'!='");
      }
      return;
    }
    if (c == '"' || c == '\'') return lex_string(t);
    if (c == '@') {
      advance();
      std::string word;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-') {
        word += peek();
        advance();
      }
      if (word.empty()) fail("'@' must be followed by a keyword or language tag");
      t.kind = previous == TokenKind::STRING ? TokenKind::LANG_TAG : TokenKind::AT_KEYWORD;
      t.value = word;
      return;
    }
    if (c == '^') {
      advance();
      if (peek() != '^') fail("single '^'", "'^^'");
      advance();
      t.kind = TokenKind::DOUBLE_CARET;
      t.value = "^^";
      return;
    }
    if (c == '_' && peek(1) == ':') {
      advance();
      advance();
      std::string label = scan_name_chars();
      if (label.empty()) fail("empty blank node label");
      t.kind = TokenKind::BLANK_LABEL;
      t.value = label;
      return;
    }
    if (sparql && (c == '?' || c == '$')) {
      advance();
      std::string name;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        name += peek();
        advance();
      }
      if (name.empty()) fail("empty variable name");
      t.kind = TokenKind::VARIABLE;
      t.value = name;
      return;
    }
    bool digit = std::isdigit(static_cast<unsigned char>(c));
    bool signed_number = (c == '+' || c == '-') &&
                         (std::isdigit(static_cast<unsigned char>(peek(1))) ||
                          (peek(1) == '.' && std::isdigit(static_cast<unsigned char>(peek(2)))));
    bool dot_number = c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)));
    if (digit || signed_number || dot_number) return lex_number(t);
    if (is_name_start(static_cast<unsigned char>(c)) || c == ':') return lex_name(t);
    static constexpr std::string_view kTurtlePunct = ".;,[]()";
    static constexpr std::string_view kSparqlPunct = ".;,[](){}*";
    auto punct = sparql ? kSparqlPunct : kTurtlePunct;
    if (punct.find(c) != std::string_view::npos) {
      advance();
      t.kind = TokenKind::PUNCT;
      t.value = std::string(1, c);
      return;
    }
    fail("unexpected character");
  }

  bool try_iri(Token& t) {
    std::size_t end = pos_ + 1;
    while (end < text_.size()) {
      unsigned char ch = static_cast<unsigned char>(text_[end]);
      if (ch == '>') break;
      if (ch <= 0x20 || ch == '<' || ch == '"' || ch == '{' || ch == '}' ||
          ch == '|' || ch == '^' || ch == '`' || ch == '\\') {
        return false;
      }
      ++end;
    }
    if (end >= text_.size()) return false;
    t.kind = TokenKind::IRI_REF;
    t.value = std::string(text_.substr(pos_ + 1, end - pos_ - 1));
    while (pos_ <= end) advance();
    return true;
  }

  void lex_string(Token& t) {
    char quote = peek();
    if (peek(1) == quote && peek(2) == quote) {
      fail("long (multi-line) string literals are not supported", "a single-line string",
           ErrorCode::UNSUPPORTED_SYNTAX);
    }
    advance();
    std::string value;
    while (true) {
      if (pos_ >= text_.size() || peek() == '\n' || peek() == '\r') {
        fail("unterminated string literal", std::string("closing ") + quote);
      }
      char c = peek();
      if (c == quote) {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        char e = peek();
        switch (e) {
          case 't': value += '\t'; break;
          case 'b': value += '\b'; break;
          case 'n': value += '\n'; break;
          case 'r': value += '\r'; break;
          case 'f': value += '\f'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '\\': value += '\\'; break;
          case 'u':
          case 'U': {
            std::size_t digits = e == 'u' ? 4 : 8;
            std::uint32_t cp = 0;
            for (std::size_t i = 1; i <= digits; ++i) {
              char h = peek(i);
              if (!std::isxdigit(static_cast<unsigned char>(h))) {
                fail("malformed unicode escape", "hex digit");
              }
              cp = cp * 16 + static_cast<std::uint32_t>(
                                 std::isdigit(static_cast<unsigned char>(h))
                                     ? h - '0'
                                     : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10);
            }
            for (std::size_t i = 0; i < digits; ++i) advance();
            append_utf8(value, cp);
            break;
          }
          default:
            fail("unknown escape sequence", "one of \\t \\b \\n \\r \\f \\\" \\' \\\\ \\u \\U");
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    t.kind = TokenKind::STRING;
    t.value = std::move(value);
  }

  void lex_number(Token& t) {
    std::string raw;
    auto take_digits = [&] {
      std::size_t n = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        raw += peek();
        advance();
        ++n;
      }
      return n;
    };
    if (peek() == '+' || peek() == '-') {
      raw += peek();
      advance();
    }
    take_digits();
    t.kind = TokenKind::INTEGER;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      raw += '.';
      advance();
      take_digits();
      t.kind = TokenKind::DECIMAL;
    }
    if (peek() == 'e' || peek() == 'E') {
      char sign = peek(1);
      std::size_t digit_at = (sign == '+' || sign == '-') ? 2 : 1;
      if (std::isdigit(static_cast<unsigned char>(peek(digit_at)))) {
        raw += peek();
        advance();
        if (digit_at == 2) {
          raw += peek();
          advance();
        }
        take_digits();
        t.kind = TokenKind::DOUBLE;
      }
    }
    t.value = std::move(raw);
  }

  std::string scan_name_chars() {
    std::string out;
    while (pos_ < text_.size() &&
           (is_name_char(static_cast<unsigned char>(peek())) || peek() == ':')) {
      out += peek();
      advance();
    }
    // A trailing '.' ends the statement rather than the name.
    while (!out.empty() && out.back() == '.') {
      out.pop_back();
      --pos_;
      --column_;
    }
    return out;
  }

  void lex_name(Token& t) {
    std::string word;
    if (peek() == ':') {
      word += ':';
      advance();
    }
    word += scan_name_chars();
    auto colon = word.find(':');
    if (colon == std::string::npos) {
      t.kind = TokenKind::NAME;
      t.value = std::move(word);
      return;
    }
    t.kind = TokenKind::PREFIXED_NAME;
    t.value = word.substr(0, colon);
    t.local = word.substr(colon + 1);
  }

  std::string_view text_;
  Dialect dialect_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text, Dialect dialect) {
  return Lexer(text, dialect).run();
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t i = pos_ + ahead;
  return i < tokens_.size() ? tokens_[i] : tokens_.back();
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenStream::accept_punct(char c) {
  if (!peek().is_punct(c)) return false;
  next();
  return true;
}

void TokenStream::expect_punct(char c, std::string_view context) {
  if (accept_punct(c)) return;
  std::string expected = "'" + std::string(1, c) + "'";
  if (!context.empty()) expected += " " + std::string(context);
  fail(peek(), expected);
}

void TokenStream::fail(const Token& at, std::string expected, std::string detail) const {
  fail_code(ErrorCode::SYNTAX_ERROR, at, std::move(expected), std::move(detail));
}

void TokenStream::fail_code(ErrorCode code, const Token& at, std::string expected,
                            std::string detail) const {
  throw SyntaxError(code, at.line, at.column, describe(at), std::move(expected),
                    std::move(detail));
}

std::string describe(const Token& t) {
  if (t.kind == TokenKind::END) return "end of input";
  return "'" + t.raw + "'";
}

bool starts_iri(const Token& t, bool allow_a) {
  return t.kind == TokenKind::IRI_REF || t.kind == TokenKind::PREFIXED_NAME ||
         (allow_a && t.kind == TokenKind::NAME && t.value == "a");
}

bool starts_literal(const Token& t) {
  return t.kind == TokenKind::STRING || t.kind == TokenKind::INTEGER ||
         t.kind == TokenKind::DECIMAL || t.kind == TokenKind::DOUBLE ||
         (t.kind == TokenKind::NAME && (t.value == "true" || t.value == "false"));
}

bool starts_term(const Token& t) {
  return starts_iri(t, false) || starts_literal(t) || t.kind == TokenKind::BLANK_LABEL;
}

Iri read_iri(TokenStream& in, const PrefixMap& prefixes, bool allow_a) {
  const Token& t = in.peek();
  if (t.kind == TokenKind::IRI_REF) {
    if (!is_valid_iri(t.value)) in.fail(t, "a non-empty IRI", "empty or malformed IRI");
    in.next();
    return Iri{t.value};
  }
  if (t.kind == TokenKind::PREFIXED_NAME) {
    auto it = prefixes.find(t.value);
    if (it == prefixes.end()) {
      in.fail_code(ErrorCode::UNDEFINED_PREFIX, t, "a declared prefix",
                   "undefined prefix '" + t.value + ":'");
    }
    in.next();
    return Iri{it->second + t.local};
  }
  if (allow_a && t.kind == TokenKind::NAME && t.value == "a") {
    in.next();
    return vocab::rdf::type();
  }
  in.fail(t, allow_a ? "an IRI, prefixed name or 'a'" : "an IRI or prefixed name");
}

Literal read_literal(TokenStream& in, const PrefixMap& prefixes) {
  const Token& t = in.next();
  switch (t.kind) {
    case TokenKind::STRING: {
      if (in.peek().kind == TokenKind::LANG_TAG) {
        return lang_string(t.value, in.next().value);
      }
      if (in.peek().kind == TokenKind::DOUBLE_CARET) {
        in.next();
        return typed(t.value, read_iri(in, prefixes, false));
      }
      return plain(t.value);
    }
    case TokenKind::INTEGER: return typed(t.value, vocab::xsd::integer());
    case TokenKind::DECIMAL: return typed(t.value, vocab::xsd::decimal());
    case TokenKind::DOUBLE: return typed(t.value, vocab::xsd::dbl());
    case TokenKind::NAME:
      if (t.value == "true" || t.value == "false") {
        return typed(t.value, vocab::xsd::boolean());
      }
      break;
    default: break;
  }
  in.fail(t, "a literal");
}

bool read_directive(TokenStream& in, PrefixMap& prefixes) {
  const Token& t = in.peek();
  bool turtle_form = t.kind == TokenKind::AT_KEYWORD && t.value == "prefix";
  bool sparql_form = t.is_name("PREFIX");
  if (t.kind == TokenKind::AT_KEYWORD && t.value == "base") {
    in.fail_code(ErrorCode::UNSUPPORTED_SYNTAX, t, "", "@base is not supported");
  }
  if (t.is_name("BASE")) {
    in.fail_code(ErrorCode::UNSUPPORTED_SYNTAX, t, "", "BASE is not supported");
  }
  if (t.kind == TokenKind::AT_KEYWORD && !turtle_form) {
    in.fail(t, "'@prefix'", "unknown directive '@" + t.value + "'");
  }
  if (!turtle_form && !sparql_form) return false;
  in.next();
  const Token& name = in.peek();
  if (name.kind != TokenKind::PREFIXED_NAME || !name.local.empty()) {
    in.fail(name, "a prefix label ending in ':'");
  }
  in.next();
  const Token& ns = in.peek();
  if (ns.kind != TokenKind::IRI_REF) in.fail(ns, "a namespace IRI in angle brackets");
  in.next();
  prefixes[name.value] = ns.value;
  if (turtle_form) in.expect_punct('.', "after @prefix directive");
  return true;
}

}  // namespace detail
}  // namespace sml::rdf
