#include "sml/catalog/domain_model.h"

#include <algorithm>
#include <array>
#include <set>

#include "sml/rdf/vocabulary.h"

namespace sml::catalog {

namespace {

constexpr std::array<std::pair<SemanticKind, std::string_view>, 7> kKindNames{{
    {SemanticKind::TIMESTAMP, "TIMESTAMP"},
    {SemanticKind::GEO_POINT, "GEO_POINT"},
    {SemanticKind::GEO_POLYLINE, "GEO_POLYLINE"},
    {SemanticKind::NUMBER, "NUMBER"},
    {SemanticKind::CATEGORY, "CATEGORY"},
    {SemanticKind::TEXT, "TEXT"},
    {SemanticKind::IDENTIFIER, "IDENTIFIER"},
}};

std::string local_name(const Iri& iri) {
  auto pos = iri.value.find_last_of("#/");
  return pos == std::string::npos ? iri.value : iri.value.substr(pos + 1);
}

std::string label_of(const rdf::Graph& g, const Iri& node) {
  auto l = g.object(node, vocab::rdfs::label());
  if (l && rdf::is_literal(*l)) return std::get<rdf::Literal>(*l).lexical;
  return local_name(node);
}

std::optional<std::string> literal_text(const std::optional<rdf::Term>& t) {
  if (!t || !rdf::is_literal(*t)) return std::nullopt;
  return std::get<rdf::Literal>(*t).lexical;
}

bool is_numeric_type(const Iri& t) {
  return t == vocab::xsd::integer() || t == vocab::xsd::decimal() || t == vocab::xsd::dbl();
}

bool range_fits(SemanticKind kind, const Iri& range, bool range_is_class) {
  const Iri str = vocab::xsd::string();
  switch (kind) {
    case SemanticKind::TIMESTAMP: return range == vocab::xsd::date_time();
    case SemanticKind::NUMBER: return is_numeric_type(range);
    case SemanticKind::GEO_POINT:
      return range == vocab::xsd::decimal() || range == vocab::xsd::dbl();
    case SemanticKind::GEO_POLYLINE: return range == str;
    case SemanticKind::CATEGORY:
      return range_is_class || range == str || range == vocab::xsd::integer();
    case SemanticKind::TEXT: return range == str;
    case SemanticKind::IDENTIFIER: return range == str || range == vocab::xsd::integer();
  }
  return false;
}

SemanticKind infer_kind(const Iri& range, bool range_is_class) {
  if (range_is_class) return SemanticKind::CATEGORY;
  if (range == vocab::xsd::date_time()) return SemanticKind::TIMESTAMP;
  if (is_numeric_type(range)) return SemanticKind::NUMBER;
  return SemanticKind::TEXT;
}

}  // namespace

std::string_view to_string(SemanticKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "TEXT";
}

std::optional<SemanticKind> semantic_kind_from_string(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(GeoAxis axis) {
  switch (axis) {
    case GeoAxis::LATITUDE: return "latitude";
    case GeoAxis::LONGITUDE: return "longitude";
    case GeoAxis::NONE: break;
  }
  return "";
}

bool is_datatype(const Iri& iri) { return iri.value.starts_with(vocab::kXsd); }

const DomainProperty* DomainModel::property(const Iri& iri) const {
  auto it = properties_.find(iri);
  return it == properties_.end() ? nullptr : &it->second;
}

bool DomainModel::is_subclass_of(const Iri& cls, const Iri& ancestor) const {
  std::optional<Iri> cur = cls;
  // Cycles are broken at load time, so the walk terminates.
  while (cur) {
    if (*cur == ancestor) return true;
    auto it = classes_.find(*cur);
    if (it == classes_.end()) return false;
    cur = it->second.parent;
  }
  return false;
}

bool DomainModel::is_domain_class(const Iri& cls) const {
  return has_class(cls) && is_subclass_of(cls, vocab::sml::domain_class());
}

std::vector<Iri> DomainModel::descendants(const Iri& cls) const {
  std::vector<Iri> out;
  for (const auto& [iri, c] : classes_) {
    if (is_subclass_of(iri, cls)) out.push_back(iri);
  }
  return out;
}

struct DomainModelLoader {
  static DomainModelLoad run(const rdf::Graph& g) {
    DomainModelLoad out;
    auto& classes = out.model.classes_;
    auto& diags = out.diagnostics;
    const Iri root = vocab::sml::domain_class();

    std::set<Iri> class_iris{root};
    for (const Iri& type : {vocab::sml::domain_class(), vocab::rdfs::klass()}) {
      for (const auto& s : g.subjects(vocab::rdf::type(), type)) {
        if (const auto* iri = std::get_if<Iri>(&s)) class_iris.insert(*iri);
      }
    }
    std::map<Iri, std::vector<Iri>> parents;
    for (const auto& t : g.match(std::nullopt, vocab::rdfs::sub_class_of(), std::nullopt)) {
      const auto* sub = std::get_if<Iri>(&t.subject);
      const auto* super = std::get_if<Iri>(&t.object);
      if (!sub || !super) continue;
      class_iris.insert(*sub);
      class_iris.insert(*super);
      parents[*sub].push_back(*super);
    }
    for (const auto& iri : class_iris) {
      DomainClass c{iri, label_of(g, iri), std::nullopt};
      auto it = parents.find(iri);
      if (it != parents.end()) {
        c.parent = it->second.front();
        if (it->second.size() > 1) {
          diags.push_back({Severity::WARNING,
                           "class has several superclasses; only the first is used", iri.value});
        }
      }
      classes.emplace(iri, std::move(c));
    }
    for (auto& [iri, c] : classes) {
      std::set<Iri> seen{iri};
      std::optional<Iri> cur = c.parent;
      while (cur) {
        if (!seen.insert(*cur).second) {
          diags.push_back({Severity::ERROR, "subclass cycle; superclass link dropped", iri.value});
          c.parent.reset();
          break;
        }
        auto p = classes.find(*cur);
        cur = p == classes.end() ? std::nullopt : p->second.parent;
      }
    }

    std::set<Iri> property_iris;
    for (const auto& s : g.subjects(vocab::rdf::type(), vocab::rdf::property())) {
      if (const auto* iri = std::get_if<Iri>(&s)) property_iris.insert(*iri);
    }
    for (const auto& t : g.match(std::nullopt, vocab::rdfs::domain(), std::nullopt)) {
      if (const auto* iri = std::get_if<Iri>(&t.subject)) property_iris.insert(*iri);
    }
    for (const auto& iri : property_iris) {
      auto domain = g.object(iri, vocab::rdfs::domain());
      auto range = g.object(iri, vocab::rdfs::range());
      const auto* d = domain ? std::get_if<Iri>(&*domain) : nullptr;
      const auto* r = range ? std::get_if<Iri>(&*range) : nullptr;
      if (!d || !classes.contains(*d)) {
        diags.push_back({Severity::ERROR, "property domain is not a known class", iri.value});
        continue;
      }
      if (!r || (!classes.contains(*r) && !is_datatype(*r))) {
        diags.push_back(
            {Severity::ERROR, "property range is neither a known class nor a datatype", iri.value});
        continue;
      }
      bool range_is_class = classes.contains(*r);
      DomainProperty p{iri, label_of(g, iri), *d, *r, infer_kind(*r, range_is_class), GeoAxis::NONE};
      if (auto axis = literal_text(g.object(iri, vocab::sml::geo_axis()))) {
        if (*axis == "latitude") p.axis = GeoAxis::LATITUDE;
        else if (*axis == "longitude") p.axis = GeoAxis::LONGITUDE;
        else diags.push_back({Severity::ERROR, "unknown geo axis '" + *axis + "'", iri.value});
        p.kind = SemanticKind::GEO_POINT;
      }
      if (auto text = literal_text(g.object(iri, vocab::sml::semantic_kind()))) {
        auto kind = semantic_kind_from_string(*text);
        if (!kind) {
          diags.push_back({Severity::ERROR, "unknown semantic kind '" + *text + "'", iri.value});
          continue;
        }
        p.kind = *kind;
      }
      if (!range_fits(p.kind, *r, range_is_class)) {
        diags.push_back({Severity::ERROR,
                         "semantic kind " + std::string(to_string(p.kind)) +
                             " is inconsistent with range " + r->value,
                         iri.value});
        continue;
      }
      if ((p.kind == SemanticKind::GEO_POINT) != (p.axis != GeoAxis::NONE)) {
        diags.push_back({Severity::ERROR, "sml:geoAxis is required on, and only on, GEO_POINT properties",
                         iri.value});
        continue;
      }
      out.model.properties_.emplace(iri, std::move(p));
    }
    return out;
  }
};

DomainModelLoad load_domain_model(const rdf::Graph& g) { return DomainModelLoader::run(g); }

}  // namespace sml::catalog
