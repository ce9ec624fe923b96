#include <algorithm>
#include <cmath>
#include <sstream>

#include "sml/materializer/materializer.h"
#include "sml/profiler/profiler.h"

namespace sml::materializer {

namespace {

constexpr double kPi = 3.14159265358979323846;

double radians(double deg) { return deg * kPi / 180.0; }

struct Xy {
  double x, y;
};

// Metres east and north of the origin.
Xy project(GeoPoint origin, GeoPoint q) {
  double dlon = q.lon - origin.lon;
  if (dlon > 180) dlon -= 360;
  if (dlon < -180) dlon += 360;
  return {kEarthRadiusMeters * radians(dlon) * std::cos(radians(origin.lat)),
          kEarthRadiusMeters * radians(q.lat - origin.lat)};
}

double origin_segment_distance(Xy a, Xy b) {
  double dx = b.x - a.x, dy = b.y - a.y;
  double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? -(a.x * dx + a.y * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(a.x + t * dx, a.y + t * dy);
}

}  // namespace

bool valid(GeoPoint p) {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90 && p.lat <= 90 && p.lon >= -180 &&
         p.lon <= 180;
}

double haversine_meters(GeoPoint a, GeoPoint b) {
  double p1 = radians(a.lat), p2 = radians(b.lat);
  double dp = p2 - p1, dl = radians(b.lon - a.lon);
  double s1 = std::sin(dp / 2), s2 = std::sin(dl / 2);
  double h = s1 * s1 + std::cos(p1) * std::cos(p2) * s2 * s2;
  return 2 * kEarthRadiusMeters * std::asin(std::sqrt(std::min(1.0, h)));
}

std::optional<GeoPolyline> parse_polyline(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    auto x = profiler::parse_number(token);
    if (!x) return std::nullopt;
    values.push_back(*x);
  }
  if (values.size() % 2 != 0) return std::nullopt;
  GeoPolyline line;
  for (std::size_t i = 0; i < values.size(); i += 2) {
    GeoPoint p{values[i], values[i + 1]};
    if (!valid(p)) return std::nullopt;
    if (line.empty() || !(line.back() == p)) line.push_back(p);
  }
  if (line.size() < 2) return std::nullopt;
  return line;
}

double point_polyline_meters(GeoPoint p, const GeoPolyline& line) {
  double best = INFINITY;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    best = std::min(best, origin_segment_distance(project(p, line[i]), project(p, line[i + 1])));
  }
  return best;
}

std::optional<SegmentMatch> nearest_segment(GeoPoint p, const std::vector<GeoPolyline>& segments, double max_m) {
  std::optional<SegmentMatch> best;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].size() < 2) continue;
    double d = point_polyline_meters(p, segments[i]);
    if (!best || d < best->distance_m) best = SegmentMatch{i, d};
  }
  if (best && best->distance_m > max_m) return std::nullopt;
  return best;
}

}  // namespace sml::materializer
