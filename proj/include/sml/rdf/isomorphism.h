#pragma once

#include <cstddef>

#include "sml/rdf/graph.h"

namespace sml::rdf {

inline constexpr std::size_t kMaxIsomorphismBlankNodes = 64;

// True iff some bijection between the blank nodes of `a` and `b` maps `a`
// onto `b` exactly. Throws Error(BOUND_EXCEEDED) when either graph has more
// than kMaxIsomorphismBlankNodes blank nodes.
bool graph_isomorphic(const Graph& a, const Graph& b);

}  // namespace sml::rdf
