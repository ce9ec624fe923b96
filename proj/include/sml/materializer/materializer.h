#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sml/dataspec/dataspec.h"
#include "sml/source/row_source.h"

namespace sml::materializer {

struct GeoPoint {
  double lat = 0;  // degrees
  double lon = 0;

  bool operator==(const GeoPoint&) const = default;
};

// At least two points; consecutive points differ.
using GeoPolyline = std::vector<GeoPoint>;

inline constexpr double kEarthRadiusMeters = 6'371'000.0;

bool valid(GeoPoint p);
double haversine_meters(GeoPoint a, GeoPoint b);

// "lat lon lat lon ...". Repeated consecutive points are merged.
std::optional<GeoPolyline> parse_polyline(std::string_view text);

// Distance from p to the polyline in a local equirectangular projection
// centred at p.
double point_polyline_meters(GeoPoint p, const GeoPolyline& line);

struct SegmentMatch {
  std::size_t index = 0;
  double distance_m = 0;

  bool operator==(const SegmentMatch&) const = default;
};

// Closest polyline, lowest index on ties; none when it is beyond max_m.
std::optional<SegmentMatch> nearest_segment(GeoPoint p, const std::vector<GeoPolyline>& segments, double max_m);

// Timezone-naive ISO 8601 "YYYY-MM-DDThh:mm:ss" with an optional fraction.
struct LocalTime {
  int year = 0;
  unsigned month = 0, day = 0, hour = 0, minute = 0, second = 0;
};

std::optional<LocalTime> parse_timestamp(std::string_view text);
std::optional<std::string> extract_weekday(std::string_view timestamp);  // "Monday" to "Sunday"
std::optional<int> extract_hour(std::string_view timestamp);             // 0 to 23

enum class CellType : std::uint8_t { NONE, NUMBER, TEXT, CATEGORY, TIMESTAMP };

// Numbers and timestamps keep their source text.
struct Cell {
  CellType type = CellType::NONE;
  std::string text;

  bool null() const { return type == CellType::NONE; }
  bool operator==(const Cell&) const = default;
};

using TableRow = std::vector<Cell>;

struct Table {
  dataspec::ResultSchema schema;
  std::vector<TableRow> rows;
  std::vector<Diagnostic> diagnostics;
  std::uint64_t unmatched_points = 0;  // left-join rows without a segment
};

// Cell of the given kind from source text; empty and "none" are null.
// Returns nullopt when the text does not parse as the kind.
std::optional<Cell> typed_cell(std::string_view text, catalog::SemanticKind kind);

// Uniformly chosen indices of min(n, total) rows, in ascending order.
// Reservoir sampling on a 64-bit Mersenne Twister.
std::vector<std::size_t> sample_indices(std::size_t total, std::uint64_t n, std::uint64_t seed);

// Runs the steps against the physical sources. Throws SpecError when the spec
// does not type-check and Error(SOURCE_UNREACHABLE, NOT_SUPPORTED) from the
// sources.
Table materialize(const dataspec::Specification& spec, const catalog::Catalog& c, const catalog::DomainModel& dm,
                  const source::SourceFactory& sources);

// Header from the schema names, nulls as "none", RFC 4180 quoting.
std::string write_csv(const Table& t, char separator = ',');

}  // namespace sml::materializer
