#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sml/error.h"
#include "sml/rdf/graph.h"

namespace sml::sparql {

struct Variable {
  std::string name;

  auto operator<=>(const Variable&) const = default;
};

using PatternTerm = std::variant<rdf::Term, Variable>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;  // Iri or Variable
  PatternTerm object;

  bool operator==(const TriplePattern&) const = default;
};

enum class CompareOp : std::uint8_t { EQ, NE, LT, LE, GT, GE };

struct FilterExpr {
  Variable lhs;
  CompareOp op = CompareOp::EQ;
  rdf::Term rhs;  // Literal or Iri

  bool operator==(const FilterExpr&) const = default;
};

// Required patterns are joined; each optional group is left-joined in order;
// filters apply to the whole group (for an optional group they are the
// left-join condition).
struct Pattern {
  std::vector<TriplePattern> required;
  std::vector<Pattern> optionals;
  std::vector<FilterExpr> filters;

  bool operator==(const Pattern&) const = default;
};

inline constexpr std::size_t kMaxPatternDepth = 4;

struct Query {
  std::vector<std::string> projection;  // declaration order, without '?'
  Pattern where;
  rdf::PrefixMap prefixes;
  std::vector<Diagnostic> diagnostics;
};

// Parses `PREFIX* SELECT (?v+ | *) WHERE? { ... }` with OPTIONAL groups and
// FILTER(?var op term). Blank nodes in patterns (`[ ... ]`, `_:x`) become
// fresh variables whose names start with "_:" and are never projected.
// Throws rdf::SyntaxError.
Query parse_query(std::string_view text, const rdf::PrefixMap& predeclared = {});

// Unbound variables are absent from the map.
using Solution = std::map<std::string, rdf::Term>;

// Evaluates with left-to-right nested-loop joins. Results are projected and
// sorted lexicographically by the projected bindings (unbound first).
std::vector<Solution> evaluate(const Query& q, const rdf::Graph& g);

// Evaluation helpers exposed for tests.
std::vector<Solution> evaluate_pattern(const Pattern& p, const rdf::Graph& g);
bool filter_holds(const FilterExpr& f, const Solution& s);
bool compatible(const Solution& a, const Solution& b);

// Exact comparison of xsd:integer / xsd:decimal lexical forms; nullopt when
// either side is not such a lexical form.
std::optional<int> compare_decimal(std::string_view a, std::string_view b);

// Header of ?names, then one row per solution with N-Triples cells; unbound
// cells are empty.
std::string to_tsv(const Query& q, const std::vector<Solution>& solutions);

std::vector<std::string> pattern_variables(const Pattern& p);

}  // namespace sml::sparql
