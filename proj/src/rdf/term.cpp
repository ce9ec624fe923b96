#include "sml/rdf/term.h"

#include <cstdio>

#include "sml/rdf/vocabulary.h"

namespace sml::rdf {

bool is_valid_iri(std::string_view text) {
  if (text.empty()) return false;
  for (unsigned char c : text) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
        c == '}' || c == '|' || c == '^' || c == '`' || c == '\\') {
      return false;
    }
  }
  return true;
}

Literal plain(std::string lexical) {
  return Literal{std::move(lexical), vocab::xsd::string(), std::nullopt};
}

Literal typed(std::string lexical, Iri datatype) {
  return Literal{std::move(lexical), std::move(datatype), std::nullopt};
}

Literal lang_string(std::string lexical, std::string language) {
  return Literal{std::move(lexical), vocab::rdf::lang_string(),
                 std::move(language)};
}

std::string escape_string(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string to_ntriples(const Term& t) {
  struct Visitor {
    std::string operator()(const Iri& i) const { return "<" + i.value + ">"; }
    std::string operator()(const BlankNode& b) const { return "_:" + b.label; }
    std::string operator()(const Literal& l) const {
      std::string out = "\"" + escape_string(l.lexical) + "\"";
      if (l.language) return out + "@" + *l.language;
      if (l.datatype == vocab::xsd::string()) return out;
      return out + "^^<" + l.datatype.value + ">";
    }
  };
  return std::visit(Visitor{}, t);
}

std::string term_text(const Term& t) {
  struct Visitor {
    std::string operator()(const Iri& i) const { return i.value; }
    std::string operator()(const BlankNode& b) const { return "_:" + b.label; }
    std::string operator()(const Literal& l) const { return l.lexical; }
  };
  return std::visit(Visitor{}, t);
}

}  // namespace sml::rdf
