#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sml/catalog/catalog.h"
#include "sml/source/row_source.h"

namespace sml::profiler {

using rdf::Iri;

// Running mean in Welford's form.
class RunningMean {
 public:
  void add(double x) {
    ++n_;
    mean_ += (x - mean_) / static_cast<double>(n_);
  }
  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
};

struct ColumnStatistics {
  std::uint64_t count = 0;  // rows profiled, nulls included
  std::uint64_t null_count = 0;
  std::uint64_t distinct_count = 0;  // non-null values
  bool numeric = false;              // every non-null cell is a number
  std::optional<double> mean;
  std::optional<double> min_number;
  std::optional<double> max_number;
  std::optional<std::string> min_text;  // lexicographic, non-numeric columns
  std::optional<std::string> max_text;
};

struct AttributeResult {
  Iri attribute;
  std::int64_t column = 0;
  ColumnStatistics stats;
};

struct ProfileResult {
  catalog::DatasetStatistics dataset;
  std::vector<AttributeResult> attributes;
  std::uint64_t rows_read = 0;
  std::uint64_t rows_skipped = 0;
  std::vector<Diagnostic> diagnostics;
};

inline constexpr std::uint64_t kDistinctCap = 1'000'000;

// Empty cells and "none" in any letter case.
bool is_null_cell(std::string_view cell);
// Decimal or scientific notation; no inf or nan.
std::optional<double> parse_number(std::string_view cell);

// One pass over `rows`. Rows whose width differs from the first row (or the
// header) are skipped with a diagnostic naming the row number. Attributes
// located by column name are not profiled.
ProfileResult profile_dataset(const catalog::DatasetProfile& d, source::RowSource& rows,
                              std::uint64_t distinct_cap = kDistinctCap);

// Statistics as catalog triples on the dataset and attribute IRIs: the mean
// as an xsd:decimal with nine fractional digits, numeric min/max as
// xsd:decimal, text min/max as plain strings, counts as xsd:integer.
rdf::Graph emit_statistics_triples(const ProfileResult& r, const Iri& dataset);

// Replaces the statistics triples of the profiled resources in `catalog`.
rdf::Graph merge_statistics(const rdf::Graph& catalog, const rdf::Graph& statistics);

// Shortest fixed-notation form that reads back to the same double.
std::string decimal_text(double x);

}  // namespace sml::profiler
