#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sml/error.h"
#include "sml/rdf/graph.h"

namespace sml::catalog {

using rdf::Iri;

enum class SemanticKind : std::uint8_t {
  TIMESTAMP,
  GEO_POINT,
  GEO_POLYLINE,
  NUMBER,
  CATEGORY,
  TEXT,
  IDENTIFIER,
};

std::string_view to_string(SemanticKind kind);
std::optional<SemanticKind> semantic_kind_from_string(std::string_view text);

// Which coordinate a GEO_POINT property carries. A point is a latitude and a
// longitude attribute of the same dataset.
enum class GeoAxis : std::uint8_t { NONE, LATITUDE, LONGITUDE };

std::string_view to_string(GeoAxis axis);

struct DomainClass {
  Iri iri;
  std::string label;
  std::optional<Iri> parent;

  bool operator==(const DomainClass&) const = default;
};

struct DomainProperty {
  Iri iri;
  std::string label;
  Iri domain;
  Iri range;  // a DomainClass or an xsd datatype
  SemanticKind kind = SemanticKind::TEXT;
  GeoAxis axis = GeoAxis::NONE;

  bool operator==(const DomainProperty&) const = default;
};

class DomainModel {
 public:
  const std::map<Iri, DomainClass>& classes() const { return classes_; }
  const std::map<Iri, DomainProperty>& properties() const { return properties_; }

  bool has_class(const Iri& cls) const { return classes_.contains(cls); }
  const DomainProperty* property(const Iri& iri) const;

  // Reflexive and transitive.
  bool is_subclass_of(const Iri& cls, const Iri& ancestor) const;
  // True for classes that transitively subclass sml:DomainClass.
  bool is_domain_class(const Iri& cls) const;
  // `cls` and every class below it, sorted.
  std::vector<Iri> descendants(const Iri& cls) const;

  bool operator==(const DomainModel&) const = default;

 private:
  friend struct DomainModelLoader;
  std::map<Iri, DomainClass> classes_;
  std::map<Iri, DomainProperty> properties_;
};

struct DomainModelLoad {
  DomainModel model;
  std::vector<Diagnostic> diagnostics;
};

// Classes are subjects typed sml:DomainClass or rdfs:Class and anything
// linked by rdfs:subClassOf; sml:DomainClass itself is always known.
// Properties are subjects with rdfs:domain or typed rdf:Property. A property
// kind comes from `sml:semanticKind "TIMESTAMP"` or is inferred from the
// range. Subclass cycles and inconsistent kinds are reported and the
// offending edge or property is dropped.
DomainModelLoad load_domain_model(const rdf::Graph& g);

bool is_datatype(const Iri& iri);

}  // namespace sml::catalog
