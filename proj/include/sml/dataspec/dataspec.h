#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sml/catalog/catalog.h"
#include "sml/error.h"

namespace sml::dataspec {

using catalog::ExtractorKind;
using catalog::GeoAxis;
using catalog::IntegrationKind;
using catalog::SemanticKind;
using rdf::Iri;

enum class SampleMethod : std::uint8_t { HEAD, RANDOM };

std::string_view to_string(SampleMethod m);

// Starts a new lineage, which becomes the current one.
struct SelectDataset {
  Iri dataset;
  bool operator==(const SelectDataset&) const = default;
};

// The remaining steps apply to the current lineage, except IntegrateDatasets,
// which consumes two lineages and makes their join current.
struct SampleRows {
  SampleMethod method = SampleMethod::HEAD;
  std::uint64_t n = 1;
  std::optional<std::uint64_t> seed;  // required for RANDOM
  bool operator==(const SampleRows&) const = default;
};

// Keeps the listed columns in list order, followed by every extracted column
// whose source column is kept.
struct SelectFeatures {
  std::vector<std::string> columns;
  bool operator==(const SelectFeatures&) const = default;
};

struct ExtractFeature {
  std::string source;
  ExtractorKind kind = ExtractorKind::WEEKDAY;
  std::string name;  // empty: "<source> (day)" or "<source> (hour)"
  bool operator==(const ExtractFeature&) const = default;
};

struct IntegrateDatasets {
  std::size_t left = 0;  // lineage ids, numbered by SelectDataset order
  std::size_t right = 0;
  IntegrationKind kind = IntegrationKind::SPATIAL_NEAREST;
  double max_distance_m = catalog::kDefaultMaxDistanceMeters;
  bool operator==(const IntegrateDatasets&) const = default;
};

using Step = std::variant<SelectDataset, SampleRows, SelectFeatures, ExtractFeature, IntegrateDatasets>;

std::string_view step_kind(const Step& s);

struct Specification {
  std::string id;
  std::string catalog_iri;
  std::string catalog_digest;
  std::vector<Step> steps;

  bool operator==(const Specification&) const = default;
};

struct Column {
  std::string name;
  SemanticKind kind = SemanticKind::TEXT;
  Iri property;
  Iri domain_class;
  std::size_t source_step = 0;  // step that introduced the column
  Iri dataset;                  // dataset the values come from
  std::string dataset_short_name;
  GeoAxis axis = GeoAxis::NONE;
  // Source attribute, or the extraction that computed the column.
  std::optional<Iri> attribute;
  std::optional<ExtractorKind> extractor;
  std::string derived_from;  // source column name at extraction time

  bool operator==(const Column&) const = default;
};

struct ResultSchema {
  std::vector<Column> columns;

  const Column* find(std::string_view name) const;
  bool operator==(const ResultSchema&) const = default;
};

struct Lineage {
  std::size_t id = 0;
  std::vector<Column> columns;
  bool consumed = false;  // merged into a later integration

  bool operator==(const Lineage&) const = default;
};

// Schema of every lineage after the last step.
struct SchemaState {
  std::vector<Lineage> lineages;
  std::optional<std::size_t> current;

  ResultSchema result() const;
  bool operator==(const SchemaState&) const = default;
};

// A type or reference error of one step.
class SpecError : public Error {
 public:
  SpecError(ErrorCode code, std::optional<std::size_t> step, std::string column, const std::string& message)
      : Error(code, message), step_(step), column_(std::move(column)) {}

  std::optional<std::size_t> step() const { return step_; }
  const std::string& column() const { return column_; }

 private:
  std::optional<std::size_t> step_;
  std::string column_;
};

// Metadata only: no step reads physical data. Throws SpecError.
SchemaState infer_state(const Specification& spec, const catalog::Catalog& c, const catalog::DomainModel& dm);
ResultSchema infer_schema(const Specification& spec, const catalog::Catalog& c, const catalog::DomainModel& dm);

struct StepResult {
  Specification spec;
  ResultSchema schema;
};

// Checks `step` against the schema after the existing steps; the input spec
// is not modified. Throws SpecError.
StepResult add_step(const Specification& spec, Step step, const catalog::Catalog& c,
                    const catalog::DomainModel& dm);

// Helpers shared with the materializer. Each mirrors one step on a column list.

// Index of the column named `ref`, else of the only source column mapped to
// the property `ref` (full or prefixed IRI). Throws SpecError(UNKNOWN_COLUMN).
std::size_t resolve_column(const std::vector<Column>& columns, std::string_view ref, std::size_t step);

// Input indices of the output columns of SelectFeatures.
std::vector<std::size_t> select_plan(const std::vector<Column>& columns, const SelectFeatures& s, std::size_t step);

// Columns of the dataset's mapped attributes, in column order.
std::vector<Column> dataset_columns(const catalog::DatasetProfile& d, const catalog::DomainModel& dm,
                                    std::size_t step);

struct ExtractPlan {
  std::size_t source = 0;
  Column column;
};
ExtractPlan extract_plan(const std::vector<Column>& columns, const ExtractFeature& e, std::size_t step);

struct IntegrationPlan {
  bool left_is_points = true;
  // Indices into the point side and the polyline side.
  std::size_t latitude = 0;
  std::size_t longitude = 0;
  std::size_t polyline = 0;
  std::vector<Column> columns;  // left columns, then right columns, renamed
};
IntegrationPlan integration_plan(const std::vector<Column>& left, const std::vector<Column>& right,
                                 const IntegrateDatasets& s, std::size_t step);

struct Suggestion {
  Step step;
  std::string reason;
};

// Extractions for timestamp columns of the current lineage not yet extracted,
// and spatial joins between open lineages.
std::vector<Suggestion> suggest_steps(const SchemaState& state);

// Versioned JSON document, one step per line.
std::string save_spec(const Specification& spec);
// Throws Error(MALFORMED_DOCUMENT, VERSION_MISMATCH, UNKNOWN_STEP_KIND).
Specification parse_spec(std::string_view document);

// One step as a JSON object, as it appears in the document.
std::string save_step(const Step& step);
// Throws Error(MALFORMED_DOCUMENT, UNKNOWN_STEP_KIND).
Step parse_step(std::string_view json);

struct LoadedSpec {
  Specification spec;
  std::vector<Diagnostic> diagnostics;  // digest drift is a warning
  std::optional<SchemaState> state;     // absent when revalidation failed
  std::optional<SpecError> error;
};

// Parses and revalidates against the current catalog.
LoadedSpec load_spec(std::string_view document, const catalog::Catalog& c, const catalog::DomainModel& dm,
                     std::string_view catalog_digest);

inline constexpr int kSpecVersion = 1;
inline constexpr std::string_view kSpecFormat = "simple-ml-dataspec";

// "<name>  <kind>  <property>  <domain class>  <step>" lines with a header.
std::string format_schema(const ResultSchema& schema, const rdf::PrefixMap& prefixes);

}  // namespace sml::dataspec
