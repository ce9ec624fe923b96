#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace sml::rdf {

// Absolute IRI text. Equality is codepoint identity.
struct Iri {
  std::string value;

  auto operator<=>(const Iri&) const = default;
};

// Graph-local label, e.g. "b0" for `_:b0`.
struct BlankNode {
  std::string label;

  auto operator<=>(const BlankNode&) const = default;
};

// Literals compare by (lexical, datatype, language); there is no value-space
// canonicalization at this layer.
struct Literal {
  std::string lexical;
  Iri datatype;
  std::optional<std::string> language;

  auto operator<=>(const Literal&) const = default;
};

using Term = std::variant<Iri, BlankNode, Literal>;

bool is_valid_iri(std::string_view text);

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }

// Literal constructors. `plain` uses xsd:string, `lang_string` rdf:langString.
Literal plain(std::string lexical);
Literal typed(std::string lexical, Iri datatype);
Literal lang_string(std::string lexical, std::string language);

// N-Triples style rendering, also the sort key for deterministic output.
std::string to_ntriples(const Term& t);
std::string escape_string(std::string_view text);

// Lexical form of literals, IRI text of IRIs, `_:label` for blank nodes.
std::string term_text(const Term& t);

}  // namespace sml::rdf
