#include "sml/materializer/materializer.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "sml/profiler/profiler.h"

namespace sml::materializer {

namespace {

using dataspec::Column;
using catalog::SemanticKind;

struct LineageTable {
  std::vector<Column> columns;
  std::vector<TableRow> rows;
};

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t range) {
  std::uint64_t threshold = (0 - range) % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x < threshold);
  return x % range;
}

std::optional<double> number(const Cell& c) {
  if (c.type != CellType::NUMBER) return std::nullopt;
  return profiler::parse_number(c.text);
}

class Runner {
 public:
  Runner(const catalog::Catalog& c, const catalog::DomainModel& dm, const source::SourceFactory& sources, Table& out)
      : catalog_(c), dm_(dm), sources_(sources), out_(out) {}

  void apply(const dataspec::Step& step, std::size_t i) {
    std::visit([&](const auto& s) { on(s, i); }, step);
  }

  std::vector<LineageTable> lineages;
  std::optional<std::size_t> current;

 private:
  void diagnose(std::string message, std::string subject) {
    out_.diagnostics.push_back({Severity::WARNING, std::move(message), std::move(subject)});
  }

  void on(const dataspec::SelectDataset& s, std::size_t i) {
    const auto& d = *catalog_.dataset(s.dataset);
    LineageTable t;
    t.columns = dataspec::dataset_columns(d, dm_, i);
    auto src = sources_(d);
    std::vector<std::optional<std::size_t>> index;
    for (const auto& col : t.columns) {
      const auto* a = d.attribute(*col.attribute);
      std::optional<std::size_t> k;
      if (a->column_number) {
        k = static_cast<std::size_t>(*a->column_number);
      } else if (a->column_name && src->header()) {
        const auto& h = *src->header();
        auto it = std::find(h.begin(), h.end(), *a->column_name);
        if (it != h.end()) k = static_cast<std::size_t>(it - h.begin());
      }
      if (!k) diagnose("column " + col.name + " cannot be located in the source; values are null", d.iri.value);
      index.push_back(k);
    }
    std::uint64_t n = 0;
    while (auto row = src->next()) {
      ++n;
      TableRow r;
      for (std::size_t j = 0; j < t.columns.size(); ++j) {
        const auto& col = t.columns[j];
        if (!index[j]) {
          r.emplace_back();
          continue;
        }
        if (*index[j] >= row->size()) {
          diagnose("no cell for column " + col.name, d.short_name + " row " + std::to_string(n));
          r.emplace_back();
          continue;
        }
        const auto& text = (*row)[*index[j]];
        auto cell = typed_cell(text, col.kind);
        if (!cell) {
          diagnose("cannot read \"" + text + "\" as " + std::string(catalog::to_string(col.kind)) + " in column " +
                       col.name,
                   d.short_name + " row " + std::to_string(n));
          r.emplace_back();
          continue;
        }
        r.push_back(std::move(*cell));
      }
      t.rows.push_back(std::move(r));
    }
    lineages.push_back(std::move(t));
    current = lineages.size() - 1;
  }

  void on(const dataspec::SampleRows& s, std::size_t) {
    auto& rows = lineages[*current].rows;
    if (s.method == dataspec::SampleMethod::HEAD) {
      if (rows.size() > s.n) rows.resize(static_cast<std::size_t>(s.n));
      return;
    }
    std::vector<TableRow> kept;
    for (auto k : sample_indices(rows.size(), s.n, *s.seed)) kept.push_back(std::move(rows[k]));
    rows = std::move(kept);
  }

  void on(const dataspec::SelectFeatures& s, std::size_t i) {
    auto& t = lineages[*current];
    auto plan = dataspec::select_plan(t.columns, s, i);
    std::vector<Column> cols;
    for (auto k : plan) cols.push_back(t.columns[k]);
    for (auto& r : t.rows) {
      TableRow out;
      for (auto k : plan) out.push_back(std::move(r[k]));
      r = std::move(out);
    }
    t.columns = std::move(cols);
  }

  void on(const dataspec::ExtractFeature& e, std::size_t i) {
    auto& t = lineages[*current];
    auto plan = dataspec::extract_plan(t.columns, e, i);
    std::uint64_t n = 0;
    for (auto& r : t.rows) {
      ++n;
      const Cell& src = r[plan.source];
      Cell cell;
      if (!src.null()) {
        if (e.kind == catalog::ExtractorKind::WEEKDAY) {
          if (auto d = extract_weekday(src.text)) cell = {CellType::CATEGORY, *d};
        } else if (auto h = extract_hour(src.text)) {
          cell = {CellType::NUMBER, std::to_string(*h)};
        }
        if (cell.null()) {
          diagnose("cannot extract " + plan.column.name + " from \"" + src.text + "\"", "row " + std::to_string(n));
        }
      }
      r.push_back(std::move(cell));
    }
    t.columns.push_back(std::move(plan.column));
  }

  void on(const dataspec::IntegrateDatasets& s, std::size_t i) {
    auto& left = lineages[s.left];
    auto& right = lineages[s.right];
    auto plan = dataspec::integration_plan(left.columns, right.columns, s, i);
    auto& points = plan.left_is_points ? left : right;
    auto& lines = plan.left_is_points ? right : left;

    std::vector<GeoPolyline> segments;
    for (std::size_t k = 0; k < lines.rows.size(); ++k) {
      const Cell& c = lines.rows[k][plan.polyline];
      auto line = c.null() ? std::nullopt : parse_polyline(c.text);
      if (!line) diagnose("unusable polyline; segment ignored", "segment row " + std::to_string(k + 1));
      segments.push_back(line.value_or(GeoPolyline{}));
    }

    LineageTable t;
    t.columns = std::move(plan.columns);
    std::size_t width_lines = lines.columns.size();
    std::uint64_t unmatched = 0;
    for (std::size_t k = 0; k < points.rows.size(); ++k) {
      auto& pr = points.rows[k];
      auto lat = number(pr[plan.latitude]);
      auto lon = number(pr[plan.longitude]);
      std::optional<SegmentMatch> m;
      if (lat && lon && valid({*lat, *lon})) {
        m = nearest_segment({*lat, *lon}, segments, s.max_distance_m);
      } else {
        diagnose("point has no valid coordinates", "row " + std::to_string(k + 1));
      }
      if (!m) ++unmatched;
      TableRow matched = m ? lines.rows[m->index] : TableRow(width_lines);
      TableRow r;
      auto& first = plan.left_is_points ? pr : matched;
      auto& second = plan.left_is_points ? matched : pr;
      r.insert(r.end(), first.begin(), first.end());
      r.insert(r.end(), second.begin(), second.end());
      t.rows.push_back(std::move(r));
    }
    if (unmatched > 0) {
      diagnose(std::to_string(unmatched) + " of " + std::to_string(points.rows.size()) +
                   " points have no segment within " + profiler::decimal_text(s.max_distance_m) +
                   " m; right-side columns are null",
               "step " + std::to_string(i));
    }
    out_.unmatched_points += unmatched;
    left.rows.clear();
    right.rows.clear();
    lineages.push_back(std::move(t));
    current = lineages.size() - 1;
  }

  const catalog::Catalog& catalog_;
  const catalog::DomainModel& dm_;
  const source::SourceFactory& sources_;
  Table& out_;
};

}  // namespace

std::optional<Cell> typed_cell(std::string_view text, catalog::SemanticKind kind) {
  if (profiler::is_null_cell(text)) return Cell{};
  switch (kind) {
    case SemanticKind::NUMBER:
    case SemanticKind::GEO_POINT:
      if (!profiler::parse_number(text)) return std::nullopt;
      return Cell{CellType::NUMBER, std::string(text)};
    case SemanticKind::TIMESTAMP:
      if (!parse_timestamp(text)) return std::nullopt;
      return Cell{CellType::TIMESTAMP, std::string(text)};
    case SemanticKind::CATEGORY:
      return Cell{CellType::CATEGORY, std::string(text)};
    case SemanticKind::GEO_POLYLINE:
    case SemanticKind::TEXT:
    case SemanticKind::IDENTIFIER:
      break;
  }
  return Cell{CellType::TEXT, std::string(text)};
}

std::vector<std::size_t> sample_indices(std::size_t total, std::uint64_t n, std::uint64_t seed) {
  std::size_t k = static_cast<std::size_t>(std::min<std::uint64_t>(n, total));
  std::vector<std::size_t> reservoir(k);
  for (std::size_t i = 0; i < k; ++i) reservoir[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = k; i < total; ++i) {
    auto j = uniform_below(rng, static_cast<std::uint64_t>(i) + 1);
    if (j < k) reservoir[static_cast<std::size_t>(j)] = i;
  }
  std::sort(reservoir.begin(), reservoir.end());
  return reservoir;
}

Table materialize(const dataspec::Specification& spec, const catalog::Catalog& c, const catalog::DomainModel& dm,
                  const source::SourceFactory& sources) {
  auto expected = dataspec::infer_schema(spec, c, dm);
  Table out;
  Runner runner(c, dm, sources, out);
  for (std::size_t i = 0; i < spec.steps.size(); ++i) runner.apply(spec.steps[i], i);
  if (runner.current) {
    auto& t = runner.lineages[*runner.current];
    out.schema.columns = std::move(t.columns);
    out.rows = std::move(t.rows);
  }
  if (!(out.schema == expected)) throw std::logic_error("materialized schema differs from the inferred schema");
  return out;
}

std::string write_csv(const Table& t, char separator) {
  auto line = [&](const std::vector<std::string>& fields) {
    if (fields.size() == 1 && fields[0].empty()) return std::string("\"\"\n");
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out += separator;
      out += source::csv_field(fields[i], separator);
    }
    return out + "\n";
  };
  std::vector<std::string> header;
  for (const auto& c : t.schema.columns) header.push_back(c.name);
  std::string out = t.schema.columns.empty() ? std::string() : line(header);
  for (const auto& r : t.rows) {
    std::vector<std::string> fields;
    for (const auto& c : r) fields.push_back(c.null() ? "none" : c.text);
    out += line(fields);
  }
  return out;
}

}  // namespace sml::materializer
