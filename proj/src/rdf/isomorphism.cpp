#include "sml/rdf/isomorphism.h"

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sml/error.h"

namespace sml::rdf {

namespace {

struct BlankIndex {
  std::vector<BlankNode> nodes;
  std::map<BlankNode, std::size_t> index;
  // Triples touching each blank node.
  std::vector<std::vector<const Triple*>> touching;
  std::vector<const Triple*> ground;
};

BlankIndex index_blanks(const Graph& g) {
  BlankIndex out;
  auto add = [&](const Term& t) {
    if (!is_blank(t)) return;
    const auto& b = std::get<BlankNode>(t);
    if (out.index.try_emplace(b, out.nodes.size()).second) out.nodes.push_back(b);
  };
  for (const auto& t : g) {
    add(t.subject);
    add(t.object);
  }
  if (out.nodes.size() > kMaxIsomorphismBlankNodes) {
    throw Error(ErrorCode::BOUND_EXCEEDED,
                "graph has " + std::to_string(out.nodes.size()) +
                    " blank nodes; isomorphism check is limited to " +
                    std::to_string(kMaxIsomorphismBlankNodes));
  }
  out.touching.resize(out.nodes.size());
  for (const auto& t : g) {
    bool has_blank = false;
    if (is_blank(t.subject)) {
      out.touching[out.index.at(std::get<BlankNode>(t.subject))].push_back(&t);
      has_blank = true;
    }
    if (is_blank(t.object)) {
      std::size_t i = out.index.at(std::get<BlankNode>(t.object));
      if (!is_blank(t.subject) || std::get<BlankNode>(t.subject) != std::get<BlankNode>(t.object)) {
        out.touching[i].push_back(&t);
      }
      has_blank = true;
    }
    if (!has_blank) out.ground.push_back(&t);
  }
  return out;
}

// Colour refinement: a blank node's colour summarises its neighbourhood, with
// ground terms spelled out and neighbouring blank nodes replaced by their
// previous colour.
std::vector<std::size_t> colours(const BlankIndex& idx) {
  std::vector<std::size_t> colour(idx.nodes.size(), 0);
  std::hash<std::string> hasher;
  for (int round = 0; round < 4; ++round) {
    std::vector<std::size_t> next(colour.size());
    for (std::size_t i = 0; i < idx.nodes.size(); ++i) {
      std::vector<std::string> parts;
      for (const Triple* t : idx.touching[i]) {
        auto side = [&](const Term& term) -> std::string {
          if (!is_blank(term)) return to_ntriples(term);
          std::size_t j = idx.index.at(std::get<BlankNode>(term));
          return j == i ? "@self" : "@" + std::to_string(colour[j]);
        };
        parts.push_back(side(t->subject) + " " + t->predicate.value + " " + side(t->object));
      }
      std::sort(parts.begin(), parts.end());
      std::string sig = std::to_string(colour[i]);
      for (const auto& p : parts) sig += "|" + p;
      next[i] = hasher(sig);
    }
    colour = std::move(next);
  }
  return colour;
}

class Matcher {
 public:
  Matcher(const BlankIndex& a, const BlankIndex& b, const Graph& gb,
          std::vector<std::size_t> ca, std::vector<std::size_t> cb)
      : a_(a), b_(b), gb_(gb), ca_(std::move(ca)), cb_(std::move(cb)),
        map_(a.nodes.size(), kUnset), used_(b.nodes.size(), false) {
    std::map<std::size_t, std::size_t> class_size;
    for (auto c : ca_) ++class_size[c];
    order_.resize(a.nodes.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      return class_size[ca_[x]] < class_size[ca_[y]];
    });
  }

  bool solve(std::size_t depth = 0) {
    if (depth == order_.size()) return true;
    std::size_t i = order_[depth];
    for (std::size_t j = 0; j < b_.nodes.size(); ++j) {
      if (used_[j] || cb_[j] != ca_[i]) continue;
      map_[i] = j;
      used_[j] = true;
      if (consistent(i) && solve(depth + 1)) return true;
      map_[i] = kUnset;
      used_[j] = false;
    }
    return false;
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  // Maps a term through the partial bijection; false when a blank node in it
  // is still unassigned.
  bool translate(const Term& t, Term& out) const {
    if (!is_blank(t)) {
      out = t;
      return true;
    }
    std::size_t j = map_[a_.index.at(std::get<BlankNode>(t))];
    if (j == kUnset) return false;
    out = b_.nodes[j];
    return true;
  }

  bool consistent(std::size_t i) const {
    for (const Triple* t : a_.touching[i]) {
      Term s, o;
      if (!translate(t->subject, s) || !translate(t->object, o)) continue;
      if (!gb_.contains(Triple{s, t->predicate, o})) return false;
    }
    return true;
  }

  const BlankIndex& a_;
  const BlankIndex& b_;
  const Graph& gb_;
  std::vector<std::size_t> ca_, cb_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
  std::vector<std::size_t> order_;
};

}  // namespace

bool graph_isomorphic(const Graph& a, const Graph& b) {
  BlankIndex ia = index_blanks(a);
  BlankIndex ib = index_blanks(b);
  if (a.size() != b.size()) return false;
  if (ia.nodes.size() != ib.nodes.size() || ia.ground.size() != ib.ground.size()) {
    return false;
  }
  for (const Triple* t : ia.ground) {
    if (!b.contains(*t)) return false;
  }
  auto ca = colours(ia);
  auto cb = colours(ib);
  auto sa = ca, sb = cb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  return Matcher(ia, ib, b, std::move(ca), std::move(cb)).solve();
}

}  // namespace sml::rdf
