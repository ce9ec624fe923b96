#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sml/rdf/term.h"

namespace sml::rdf {

struct Triple {
  Term subject;  // Iri or BlankNode
  Iri predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
};

// prefix label (without ':') -> namespace IRI
using PrefixMap = std::map<std::string, std::string>;

// Set of triples plus the prefix map used for abbreviation. Built once, then
// shared read-only.
class Graph {
 public:
  using const_iterator = std::set<Triple>::const_iterator;

  Graph() = default;
  explicit Graph(PrefixMap prefixes) : prefixes_(std::move(prefixes)) {}

  // Returns false when the triple was already present. Throws
  // std::invalid_argument for a literal subject.
  bool insert(Triple t);
  bool erase(const Triple& t);
  void merge(const Graph& other);

  bool contains(const Triple& t) const { return triples_.contains(t); }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }

  // Triples matching every bound position, in (s, p, o) order.
  std::vector<Triple> match(const std::optional<Term>& s,
                            const std::optional<Iri>& p,
                            const std::optional<Term>& o) const;

  // Convenience lookups over `match`.
  std::vector<Term> objects(const Term& s, const Iri& p) const;
  std::optional<Term> object(const Term& s, const Iri& p) const;
  std::vector<Term> subjects(const Iri& p, const Term& o) const;

  const PrefixMap& prefixes() const { return prefixes_; }
  PrefixMap& prefixes() { return prefixes_; }

  bool operator==(const Graph& other) const { return triples_ == other.triples_; }

 private:
  std::set<Triple> triples_;
  PrefixMap prefixes_;
};

// Prefix map with every namespace used by the catalog fixtures.
PrefixMap standard_prefixes();

// Compact `ns` IRIs to `prefix:local` where the local part is a valid name.
std::optional<std::string> compact(const Iri& iri, const PrefixMap& prefixes);
// Expand `prefix:local`; full IRIs (or `<iri>`) pass through.
std::optional<Iri> expand(std::string_view text, const PrefixMap& prefixes);

}  // namespace sml::rdf
