#include "sml/rdf/graph.h"

#include <stdexcept>

#include "sml/rdf/vocabulary.h"

namespace sml::rdf {

bool Graph::insert(Triple t) {
  if (is_literal(t.subject)) {
    throw std::invalid_argument("literal in subject position: " +
                                to_ntriples(t.subject));
  }
  return triples_.insert(std::move(t)).second;
}

bool Graph::erase(const Triple& t) { return triples_.erase(t) > 0; }

void Graph::merge(const Graph& other) {
  triples_.insert(other.triples_.begin(), other.triples_.end());
  for (const auto& [prefix, ns] : other.prefixes_) prefixes_.try_emplace(prefix, ns);
}

std::vector<Triple> Graph::match(const std::optional<Term>& s,
                                 const std::optional<Iri>& p,
                                 const std::optional<Term>& o) const {
  std::vector<Triple> out;
  auto keep = [&](const Triple& t) {
    return (!p || t.predicate == *p) && (!o || t.object == *o);
  };
  if (s) {
    // Triples are ordered by subject first, so a bound subject is a range.
    auto it = triples_.lower_bound(Triple{*s, Iri{}, Iri{}});
    for (; it != triples_.end() && it->subject == *s; ++it) {
      if (keep(*it)) out.push_back(*it);
    }
    return out;
  }
  for (const auto& t : triples_) {
    if (keep(t)) out.push_back(t);
  }
  return out;
}

std::vector<Term> Graph::objects(const Term& s, const Iri& p) const {
  std::vector<Term> out;
  for (auto& t : match(s, p, std::nullopt)) out.push_back(std::move(t.object));
  return out;
}

std::optional<Term> Graph::object(const Term& s, const Iri& p) const {
  auto found = match(s, p, std::nullopt);
  if (found.empty()) return std::nullopt;
  return found.front().object;
}

std::vector<Term> Graph::subjects(const Iri& p, const Term& o) const {
  std::vector<Term> out;
  for (auto& t : match(std::nullopt, p, o)) out.push_back(std::move(t.subject));
  return out;
}

PrefixMap standard_prefixes() {
  return PrefixMap{
      {"csvw", std::string(vocab::kCsvw)},
      {"dcat", std::string(vocab::kDcat)},
      {"dcterms", std::string(vocab::kDcterms)},
      {"rdf", std::string(vocab::kRdf)},
      {"rdfs", std::string(vocab::kRdfs)},
      {"sioc", std::string(vocab::kSioc)},
      {"sml", std::string(vocab::kSml)},
      {"so", std::string(vocab::kSo)},
      {"xsd", std::string(vocab::kXsd)},
  };
}

namespace {

bool is_name_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
}

bool is_valid_local(std::string_view local) {
  if (local.empty()) return false;
  if (local.front() == '-' || local.front() == '.' || local.back() == '.') {
    return false;
  }
  for (char c : local) {
    if (!is_name_char(c)) return false;
  }
  return true;
}

}  // namespace

std::optional<std::string> compact(const Iri& iri, const PrefixMap& prefixes) {
  std::optional<std::string> best;
  std::size_t best_ns = 0;
  for (const auto& [prefix, ns] : prefixes) {
    if (ns.size() < best_ns || !iri.value.starts_with(ns)) continue;
    std::string_view local = std::string_view(iri.value).substr(ns.size());
    if (!is_valid_local(local)) continue;
    best = prefix + ":" + std::string(local);
    best_ns = ns.size();
  }
  return best;
}

std::optional<Iri> expand(std::string_view text, const PrefixMap& prefixes) {
  if (text.size() >= 2 && text.front() == '<' && text.back() == '>') {
    text = text.substr(1, text.size() - 2);
    if (!is_valid_iri(text)) return std::nullopt;
    return Iri{std::string(text)};
  }
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    auto it = prefixes.find(std::string(text.substr(0, colon)));
    // "http://..." has no prefix named "http"; fall through to the raw form.
    if (it != prefixes.end()) {
      return Iri{it->second + std::string(text.substr(colon + 1))};
    }
    if (is_valid_iri(text) && text.substr(colon + 1).starts_with("//")) {
      return Iri{std::string(text)};
    }
    if (is_valid_iri(text) && text.starts_with("urn:")) return Iri{std::string(text)};
  }
  return std::nullopt;
}

}  // namespace sml::rdf
