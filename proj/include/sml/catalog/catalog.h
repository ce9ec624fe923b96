#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sml/catalog/domain_model.h"
#include "sml/error.h"
#include "sml/rdf/graph.h"

namespace sml::catalog {

using rdf::Literal;
using rdf::Term;

// Unknown (predicate, object) pairs kept verbatim on a profile.
using PassThrough = std::vector<std::pair<Iri, Term>>;

// Bounds are optional so that an incomplete coverage survives loading and
// is reported by validate().
struct TemporalCoverage {
  Term node;
  std::optional<Literal> start;
  std::optional<Literal> end;

  bool operator==(const TemporalCoverage&) const = default;
};

enum class AccessKind : std::uint8_t { TEXT_FILE, DATABASE };

struct AccessDescriptor {
  Term node;
  AccessKind kind = AccessKind::TEXT_FILE;
  // TEXT_FILE
  std::optional<std::string> file_location;
  std::optional<std::string> format;
  std::optional<std::string> separator;
  std::optional<bool> has_header;
  // DATABASE
  std::optional<std::string> connection;
  std::optional<std::string> table;
  PassThrough extra;

  char separator_char() const { return separator && separator->size() == 1 ? (*separator)[0] : ','; }
  bool header() const { return has_header.value_or(false); }

  bool operator==(const AccessDescriptor&) const = default;
};

struct Mapping {
  Iri property;
  Iri domain_class;

  bool operator==(const Mapping&) const = default;
};

// Statistics as stored in the catalog. Literals keep their lexical form so
// emitted numbers reload unchanged.
struct AttributeStatistics {
  std::optional<std::uint64_t> count;
  std::optional<std::uint64_t> null_count;
  std::optional<std::uint64_t> distinct_count;
  std::optional<Literal> mean;
  std::optional<Literal> min;
  std::optional<Literal> max;

  bool empty() const {
    return !count && !null_count && !distinct_count && !mean && !min && !max;
  }
  bool operator==(const AttributeStatistics&) const = default;
};

struct DatasetStatistics {
  std::uint64_t number_of_instances = 0;

  bool operator==(const DatasetStatistics&) const = default;
};

struct AttributeProfile {
  Iri iri;
  // dcterms:identifier, else the label, else the IRI local name.
  std::string identifier;
  bool identifier_declared = false;
  std::optional<Literal> label;
  std::optional<std::int64_t> column_number;
  std::optional<std::string> column_name;
  // The sml:hasMapping node and whatever parts of it are present.
  std::optional<Term> mapping_node;
  std::optional<Iri> mapped_property;
  std::optional<Iri> mapped_class;
  AttributeStatistics statistics;
  PassThrough extra;

  // Set only when both parts are present.
  std::optional<Mapping> mapping() const;
  bool operator==(const AttributeProfile&) const = default;
};

struct DatasetProfile {
  Iri iri;
  std::optional<Iri> catalog;  // absent for a dataset no catalog links to
  std::string title;
  // dcterms:identifier, else the IRI local name. Qualifies column names.
  std::string short_name;
  bool short_name_declared = false;
  std::optional<TemporalCoverage> temporal;
  std::optional<AccessDescriptor> access;
  std::vector<AttributeProfile> attributes;  // by column number, then identifier
  std::optional<DatasetStatistics> statistics;
  PassThrough extra;

  const AttributeProfile* attribute(const Iri& iri) const;
  bool operator==(const DatasetProfile&) const = default;
};

struct Catalog {
  std::vector<Iri> catalogs;
  std::vector<DatasetProfile> datasets;  // sorted by IRI
  // Triples the typed layer does not interpret; emitted back unchanged.
  rdf::Graph residual;

  const DatasetProfile* dataset(const Iri& iri) const;
  // Looks up by IRI, then by short name.
  const DatasetProfile* find_dataset(std::string_view ref, const rdf::PrefixMap& prefixes) const;
  bool operator==(const Catalog& o) const {
    return catalogs == o.catalogs && datasets == o.datasets && residual == o.residual;
  }
};

struct CatalogLoad {
  Catalog catalog;
  std::vector<Diagnostic> diagnostics;
};

CatalogLoad load_catalog(const rdf::Graph& g);

// Inverse of load_catalog: load(emit(load(g))) equals load(g).
rdf::Graph emit_catalog(const Catalog& c);

// FNV-1a 64 over the sorted N-Triples lines, as "fnv1a64:<16 hex digits>".
std::string graph_digest(const rdf::Graph& g);

enum class ViolationKind : std::uint8_t {
  UNKNOWN_DOMAIN_CLASS,
  NOT_A_DOMAIN_CLASS,
  UNKNOWN_PROPERTY,
  PROPERTY_DOMAIN_MISMATCH,
  MISSING_ACCESS_DESCRIPTOR,
  INCOMPLETE_ACCESS_DESCRIPTOR,
  LOCATOR_MISMATCH,
  MISSING_COLUMN_LOCATOR,
  INCOMPLETE_MAPPING,
  TEMPORAL_ORDER,
  INCOMPLETE_TEMPORAL_COVERAGE,
  DATASET_WITHOUT_ATTRIBUTES,
  DATASET_NOT_IN_CATALOG,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;  // offending IRI
  std::string message;

  bool operator==(const Violation&) const = default;
};

// Empty result means the catalog conforms.
std::vector<Violation> validate(const Catalog& c, const DomainModel& dm);

struct AttributeRow {
  std::string identifier;
  std::optional<std::int64_t> column_number;
  std::optional<std::string> column_name;
  std::optional<Mapping> mapping;

  bool operator==(const AttributeRow&) const = default;
};

// Throws Error(UNKNOWN_DATASET).
std::vector<AttributeRow> attributes_of(const Catalog& c, const Iri& dataset);

// Datasets with an attribute mapped to `cls` or one of its subclasses.
// Throws Error(UNKNOWN_CLASS).
std::vector<Iri> datasets_for_class(const Catalog& c, const Iri& cls, const DomainModel& dm);

enum class ExtractorKind : std::uint8_t { WEEKDAY, HOUR_OF_DAY };

std::string_view to_string(ExtractorKind kind);
std::optional<ExtractorKind> extractor_kind_from_string(std::string_view text);

enum class IntegrationKind : std::uint8_t { SPATIAL_NEAREST };

std::string_view to_string(IntegrationKind kind);
std::optional<IntegrationKind> integration_kind_from_string(std::string_view text);

inline constexpr double kDefaultMaxDistanceMeters = 50.0;

struct JoinSuggestion {
  IntegrationKind kind = IntegrationKind::SPATIAL_NEAREST;
  Iri point_dataset;
  Iri latitude;
  Iri longitude;
  Iri polyline_dataset;
  Iri polyline;
  double max_distance_m = kDefaultMaxDistanceMeters;

  bool operator==(const JoinSuggestion&) const = default;
};

// Kind of the property an attribute maps to, if any.
std::optional<SemanticKind> attribute_kind(const AttributeProfile& a, const DomainModel& dm);

std::vector<ExtractorKind> suggest_extractions(const AttributeProfile& a, const DomainModel& dm);

// Throws Error(UNKNOWN_DATASET).
std::vector<JoinSuggestion> suggest_integrations(const Catalog& c, const Iri& left,
                                                 const Iri& right, const DomainModel& dm);

}  // namespace sml::catalog
