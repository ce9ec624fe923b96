#include <algorithm>
#include <array>

#include "sml/catalog/catalog.h"
#include "sml/rdf/vocabulary.h"

namespace sml::catalog {

namespace {

constexpr std::array<std::pair<ViolationKind, std::string_view>, 13> kViolationNames{{
    {ViolationKind::UNKNOWN_DOMAIN_CLASS, "UNKNOWN_DOMAIN_CLASS"},
    {ViolationKind::NOT_A_DOMAIN_CLASS, "NOT_A_DOMAIN_CLASS"},
    {ViolationKind::UNKNOWN_PROPERTY, "UNKNOWN_PROPERTY"},
    {ViolationKind::PROPERTY_DOMAIN_MISMATCH, "PROPERTY_DOMAIN_MISMATCH"},
    {ViolationKind::MISSING_ACCESS_DESCRIPTOR, "MISSING_ACCESS_DESCRIPTOR"},
    {ViolationKind::INCOMPLETE_ACCESS_DESCRIPTOR, "INCOMPLETE_ACCESS_DESCRIPTOR"},
    {ViolationKind::LOCATOR_MISMATCH, "LOCATOR_MISMATCH"},
    {ViolationKind::MISSING_COLUMN_LOCATOR, "MISSING_COLUMN_LOCATOR"},
    {ViolationKind::INCOMPLETE_MAPPING, "INCOMPLETE_MAPPING"},
    {ViolationKind::TEMPORAL_ORDER, "TEMPORAL_ORDER"},
    {ViolationKind::INCOMPLETE_TEMPORAL_COVERAGE, "INCOMPLETE_TEMPORAL_COVERAGE"},
    {ViolationKind::DATASET_WITHOUT_ATTRIBUTES, "DATASET_WITHOUT_ATTRIBUTES"},
    {ViolationKind::DATASET_NOT_IN_CATALOG, "DATASET_NOT_IN_CATALOG"},
}};

bool is_date_like(const Literal& l) {
  return l.datatype == vocab::xsd::date() || l.datatype == vocab::xsd::date_time();
}

class Validator {
 public:
  explicit Validator(const DomainModel& dm) : dm_(dm) {}

  std::vector<Violation> run(const Catalog& c) {
    for (const auto& d : c.datasets) dataset(d);
    return std::move(out_);
  }

 private:
  void add(ViolationKind k, const Iri& subject, std::string message) {
    out_.push_back({k, subject.value, std::move(message)});
  }

  void dataset(const DatasetProfile& d) {
    if (!d.catalog) add(ViolationKind::DATASET_NOT_IN_CATALOG, d.iri, "no dcat:Catalog lists this dataset");
    if (d.attributes.empty()) add(ViolationKind::DATASET_WITHOUT_ATTRIBUTES, d.iri, "dataset has no attributes");
    if (d.temporal) {
      const auto& t = *d.temporal;
      if (!t.start || !t.end) {
        add(ViolationKind::INCOMPLETE_TEMPORAL_COVERAGE, d.iri, "temporal coverage lacks a start or end date");
      } else if (is_date_like(*t.start) && is_date_like(*t.end) &&
                 t.start->lexical.substr(0, 10) > t.end->lexical.substr(0, 10)) {
        add(ViolationKind::TEMPORAL_ORDER, d.iri,
            "start date " + t.start->lexical + " is after end date " + t.end->lexical);
      }
    }
    if (!d.access) {
      add(ViolationKind::MISSING_ACCESS_DESCRIPTOR, d.iri, "dataset has no access descriptor");
    } else if (d.access->kind == AccessKind::TEXT_FILE) {
      if (d.access->separator && d.access->separator->size() != 1) {
        add(ViolationKind::INCOMPLETE_ACCESS_DESCRIPTOR, d.iri,
            "separator must be exactly one character, got '" + *d.access->separator + "'");
      }
    } else if (!d.access->connection || !d.access->table) {
      add(ViolationKind::INCOMPLETE_ACCESS_DESCRIPTOR, d.iri, "database access needs a connection and a table");
    }
    for (const auto& a : d.attributes) attribute(d, a);
  }

  void attribute(const DatasetProfile& d, const AttributeProfile& a) {
    bool number = a.column_number.has_value();
    bool name = a.column_name.has_value();
    if (!number && !name) {
      add(ViolationKind::MISSING_COLUMN_LOCATOR, a.iri, "attribute has neither sml:columnNumber nor sml:columnName");
    } else if (d.access && d.access->kind == AccessKind::TEXT_FILE && name) {
      add(ViolationKind::LOCATOR_MISMATCH, a.iri, "text-file attributes are located by sml:columnNumber");
    } else if (d.access && d.access->kind == AccessKind::DATABASE && number) {
      add(ViolationKind::LOCATOR_MISMATCH, a.iri, "database attributes are located by sml:columnName");
    } else if (!d.access && number && name) {
      add(ViolationKind::LOCATOR_MISMATCH, a.iri, "attribute has both a column number and a column name");
    }
    if (!a.mapping_node) return;
    bool class_ok = false;
    if (!a.mapped_class) {
      add(ViolationKind::INCOMPLETE_MAPPING, a.iri, "mapping has no sml:mapsToDomain");
    } else if (!dm_.has_class(*a.mapped_class)) {
      add(ViolationKind::UNKNOWN_DOMAIN_CLASS, a.iri, "unknown domain class " + a.mapped_class->value);
    } else if (!dm_.is_domain_class(*a.mapped_class)) {
      add(ViolationKind::NOT_A_DOMAIN_CLASS, a.iri,
          a.mapped_class->value + " does not subclass sml:DomainClass");
    } else {
      class_ok = true;
    }
    if (!a.mapped_property) {
      add(ViolationKind::INCOMPLETE_MAPPING, a.iri, "mapping has no sml:mapsToProperty");
      return;
    }
    const DomainProperty* p = dm_.property(*a.mapped_property);
    if (!p) {
      add(ViolationKind::UNKNOWN_PROPERTY, a.iri, "unknown property " + a.mapped_property->value);
    } else if (class_ok && !dm_.is_subclass_of(*a.mapped_class, p->domain)) {
      add(ViolationKind::PROPERTY_DOMAIN_MISMATCH, a.iri,
          p->iri.value + " has domain " + p->domain.value + ", not " + a.mapped_class->value);
    }
  }

  const DomainModel& dm_;
  std::vector<Violation> out_;
};

const DatasetProfile& require(const Catalog& c, const Iri& iri) {
  const auto* d = c.dataset(iri);
  if (!d) throw Error(ErrorCode::UNKNOWN_DATASET, "unknown dataset " + iri.value);
  return *d;
}

struct GeoColumns {
  const AttributeProfile* latitude = nullptr;
  const AttributeProfile* longitude = nullptr;
  std::vector<const AttributeProfile*> polylines;
};

GeoColumns geo_columns(const DatasetProfile& d, const DomainModel& dm) {
  GeoColumns g;
  for (const auto& a : d.attributes) {
    auto m = a.mapping();
    const DomainProperty* p = m ? dm.property(m->property) : nullptr;
    if (!p) continue;
    if (p->kind == SemanticKind::GEO_POINT) {
      auto& slot = p->axis == GeoAxis::LATITUDE ? g.latitude : g.longitude;
      if (!slot) slot = &a;
    } else if (p->kind == SemanticKind::GEO_POLYLINE) {
      g.polylines.push_back(&a);
    }
  }
  return g;
}

void point_to_polyline(const DatasetProfile& points, const DatasetProfile& lines, const DomainModel& dm,
                       std::vector<JoinSuggestion>& out) {
  GeoColumns p = geo_columns(points, dm);
  if (!p.latitude || !p.longitude) return;
  for (const auto* line : geo_columns(lines, dm).polylines) {
    out.push_back({IntegrationKind::SPATIAL_NEAREST, points.iri, p.latitude->iri, p.longitude->iri,
                   lines.iri, line->iri, kDefaultMaxDistanceMeters});
  }
}

}  // namespace

std::string_view to_string(ViolationKind kind) {
  for (const auto& [k, name] : kViolationNames) {
    if (k == kind) return name;
  }
  return "";
}

std::string_view to_string(ExtractorKind kind) {
  return kind == ExtractorKind::WEEKDAY ? "WEEKDAY" : "HOUR_OF_DAY";
}

std::optional<ExtractorKind> extractor_kind_from_string(std::string_view text) {
  if (text == "WEEKDAY") return ExtractorKind::WEEKDAY;
  if (text == "HOUR_OF_DAY") return ExtractorKind::HOUR_OF_DAY;
  return std::nullopt;
}

std::string_view to_string(IntegrationKind) { return "SPATIAL_NEAREST"; }

std::optional<IntegrationKind> integration_kind_from_string(std::string_view text) {
  if (text == "SPATIAL_NEAREST") return IntegrationKind::SPATIAL_NEAREST;
  return std::nullopt;
}

std::vector<Violation> validate(const Catalog& c, const DomainModel& dm) { return Validator(dm).run(c); }

std::vector<AttributeRow> attributes_of(const Catalog& c, const Iri& dataset) {
  std::vector<AttributeRow> out;
  for (const auto& a : require(c, dataset).attributes) {
    out.push_back({a.identifier, a.column_number, a.column_name, a.mapping()});
  }
  return out;
}

std::vector<Iri> datasets_for_class(const Catalog& c, const Iri& cls, const DomainModel& dm) {
  if (!dm.has_class(cls)) throw Error(ErrorCode::UNKNOWN_CLASS, "unknown class " + cls.value);
  std::vector<Iri> out;
  for (const auto& d : c.datasets) {
    bool hit = std::any_of(d.attributes.begin(), d.attributes.end(), [&](const AttributeProfile& a) {
      return a.mapped_class && a.mapped_property && dm.is_subclass_of(*a.mapped_class, cls);
    });
    if (hit) out.push_back(d.iri);
  }
  return out;
}

std::optional<SemanticKind> attribute_kind(const AttributeProfile& a, const DomainModel& dm) {
  auto m = a.mapping();
  if (!m) return std::nullopt;
  const DomainProperty* p = dm.property(m->property);
  if (!p) return std::nullopt;
  return p->kind;
}

std::vector<ExtractorKind> suggest_extractions(const AttributeProfile& a, const DomainModel& dm) {
  if (attribute_kind(a, dm) == SemanticKind::TIMESTAMP) {
    return {ExtractorKind::WEEKDAY, ExtractorKind::HOUR_OF_DAY};
  }
  return {};
}

std::vector<JoinSuggestion> suggest_integrations(const Catalog& c, const Iri& left, const Iri& right,
                                                 const DomainModel& dm) {
  const DatasetProfile& l = require(c, left);
  const DatasetProfile& r = require(c, right);
  std::vector<JoinSuggestion> out;
  point_to_polyline(l, r, dm, out);
  if (left != right) point_to_polyline(r, l, dm, out);
  return out;
}

}  // namespace sml::catalog
