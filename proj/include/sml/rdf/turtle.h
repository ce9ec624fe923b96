#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sml/error.h"
#include "sml/rdf/graph.h"
#include "sml/rdf/syntax.h"

namespace sml::rdf {

struct TurtleResult {
  Graph graph;
  std::vector<Diagnostic> diagnostics;
};

// Parses the Turtle subset used by catalogs and domain models: prefix
// directives, prefixed names, `a`, predicate and object lists, anonymous
// blank-node property lists, string/typed/language-tagged literals, bare
// numbers and booleans, IRI references and comments. Collections, @base and
// long strings raise SyntaxError with UNSUPPORTED_SYNTAX.
//
// `predeclared` seeds the prefix map, so documents that omit their @prefix
// block (e.g. catalog excerpts) still parse. Blank nodes are labelled b0, b1,
// ... in document order.
TurtleResult parse_turtle(std::string_view text, const PrefixMap& predeclared = {});

// Deterministic serialization: prefix directives sorted by label, subjects
// sorted by N-Triples text, blank nodes referenced exactly once as an object
// are inlined as `[ ... ]`.
std::string serialize_turtle(const Graph& g);

// File helpers; throw Error(IO_NOT_FOUND / IO_ERROR).
std::string read_file(const std::filesystem::path& path);
TurtleResult read_turtle_file(const std::filesystem::path& path,
                              const PrefixMap& predeclared = {});

}  // namespace sml::rdf
