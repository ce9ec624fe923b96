#include "sml/dataspec/dataspec.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace sml::dataspec {

namespace {

std::string default_name(const std::string& source, ExtractorKind kind) {
  return source + (kind == ExtractorKind::WEEKDAY ? " (day)" : " (hour)");
}

std::optional<Iri> ref_iri(std::string_view ref) {
  if (ref.size() > 2 && ref.front() == '<' && ref.back() == '>') return Iri{std::string(ref.substr(1, ref.size() - 2))};
  if (ref.find("://") != std::string_view::npos) return Iri{std::string(ref)};
  if (ref.find(':') == std::string_view::npos) return std::nullopt;
  return rdf::expand(ref, rdf::standard_prefixes());
}

bool has_name(const std::vector<Column>& columns, std::string_view name) {
  return std::any_of(columns.begin(), columns.end(), [&](const Column& c) { return c.name == name; });
}

struct GeoColumns {
  std::optional<std::size_t> latitude, longitude, polyline;

  bool points() const { return latitude && longitude; }
};

GeoColumns geo_columns(const std::vector<Column>& columns) {
  GeoColumns g;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const auto& c = columns[i];
    if (c.kind == SemanticKind::GEO_POINT && c.axis == GeoAxis::LATITUDE && !g.latitude) g.latitude = i;
    if (c.kind == SemanticKind::GEO_POINT && c.axis == GeoAxis::LONGITUDE && !g.longitude) g.longitude = i;
    if (c.kind == SemanticKind::GEO_POLYLINE && !g.polyline) g.polyline = i;
  }
  return g;
}

std::vector<Column> qualify(std::vector<Column> side, const std::set<std::string>& clashes) {
  std::map<std::string, std::string> renamed;
  for (auto& c : side) {
    if (!clashes.count(c.name)) continue;
    std::string q = c.dataset_short_name + "." + c.name;
    renamed[c.name] = q;
    c.name = std::move(q);
  }
  for (auto& c : side) {
    auto it = renamed.find(c.derived_from);
    if (c.extractor && it != renamed.end()) c.derived_from = it->second;
  }
  return side;
}

class Checker {
 public:
  Checker(const catalog::Catalog& c, const catalog::DomainModel& dm) : catalog_(c), dm_(dm) {}

  void apply(const Step& step, std::size_t i) {
    std::visit([&](const auto& s) { on(s, i); }, step);
  }

  SchemaState state;

 private:
  Lineage& current(std::size_t i) {
    if (!state.current) throw SpecError(ErrorCode::NO_ACTIVE_LINEAGE, i, "", "no dataset selected yet");
    return state.lineages[*state.current];
  }

  void on(const SelectDataset& s, std::size_t i) {
    const auto* d = catalog_.dataset(s.dataset);
    if (!d) throw SpecError(ErrorCode::UNKNOWN_DATASET, i, "", "unknown dataset " + s.dataset.value);
    Lineage l;
    l.id = state.lineages.size();
    l.columns = dataset_columns(*d, dm_, i);
    state.lineages.push_back(std::move(l));
    state.current = state.lineages.size() - 1;
  }

  void on(const SampleRows& s, std::size_t i) {
    current(i);
    if (s.n < 1) throw SpecError(ErrorCode::INVALID_PARAMETER, i, "", "sample size must be at least 1");
    if (s.method == SampleMethod::RANDOM && !s.seed) {
      throw SpecError(ErrorCode::MISSING_SEED, i, "", "RANDOM sampling needs a seed");
    }
  }

  void on(const SelectFeatures& s, std::size_t i) {
    auto& l = current(i);
    auto plan = select_plan(l.columns, s, i);
    std::vector<Column> out;
    for (auto k : plan) out.push_back(l.columns[k]);
    l.columns = std::move(out);
  }

  void on(const ExtractFeature& e, std::size_t i) {
    auto& l = current(i);
    l.columns.push_back(extract_plan(l.columns, e, i).column);
  }

  void on(const IntegrateDatasets& s, std::size_t i) {
    for (auto id : {s.left, s.right}) {
      if (id >= state.lineages.size()) {
        throw SpecError(ErrorCode::UNKNOWN_LINEAGE, i, "", "no lineage " + std::to_string(id));
      }
      if (state.lineages[id].consumed) {
        throw SpecError(ErrorCode::UNKNOWN_LINEAGE, i, "", "lineage " + std::to_string(id) + " is already integrated");
      }
    }
    if (s.left == s.right) throw SpecError(ErrorCode::INVALID_PARAMETER, i, "", "a lineage cannot be integrated with itself");
    auto plan = integration_plan(state.lineages[s.left].columns, state.lineages[s.right].columns, s, i);
    state.lineages[s.left].consumed = true;
    state.lineages[s.right].consumed = true;
    Lineage l;
    l.id = state.lineages.size();
    l.columns = std::move(plan.columns);
    state.lineages.push_back(std::move(l));
    state.current = state.lineages.size() - 1;
  }

  const catalog::Catalog& catalog_;
  const catalog::DomainModel& dm_;
};

}  // namespace

std::string_view to_string(SampleMethod m) { return m == SampleMethod::HEAD ? "HEAD" : "RANDOM"; }

std::string_view step_kind(const Step& s) {
  static constexpr std::string_view kinds[] = {"select_dataset", "sample_rows", "select_features",
                                               "extract_feature", "integrate_datasets"};
  return kinds[s.index()];
}

const Column* ResultSchema::find(std::string_view name) const {
  for (const auto& c : columns) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ResultSchema SchemaState::result() const {
  if (!current) return {};
  return {lineages[*current].columns};
}

std::vector<Column> dataset_columns(const catalog::DatasetProfile& d, const catalog::DomainModel& dm,
                                    std::size_t step) {
  std::vector<Column> out;
  for (const auto& a : d.attributes) {
    auto m = a.mapping();
    if (!m) continue;
    const auto* p = dm.property(m->property);
    if (!p) continue;
    if (has_name(out, a.identifier)) {
      throw SpecError(ErrorCode::DUPLICATE_COLUMN, step, a.identifier,
                      "dataset " + d.iri.value + " has two attributes named " + a.identifier);
    }
    Column c;
    c.name = a.identifier;
    c.kind = p->kind;
    c.property = m->property;
    c.domain_class = m->domain_class;
    c.source_step = step;
    c.dataset = d.iri;
    c.dataset_short_name = d.short_name;
    c.axis = p->axis;
    c.attribute = a.iri;
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t resolve_column(const std::vector<Column>& columns, std::string_view ref, std::size_t step) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == ref) return i;
  }
  if (auto iri = ref_iri(ref)) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (!columns[i].extractor && columns[i].property == *iri) hits.push_back(i);
    }
    if (hits.size() == 1) return hits[0];
    if (hits.size() > 1) {
      throw SpecError(ErrorCode::UNKNOWN_COLUMN, step, std::string(ref),
                      "ambiguous column reference " + std::string(ref));
    }
  }
  throw SpecError(ErrorCode::UNKNOWN_COLUMN, step, std::string(ref), "unknown column " + std::string(ref));
}

std::vector<std::size_t> select_plan(const std::vector<Column>& columns, const SelectFeatures& s, std::size_t step) {
  if (s.columns.empty()) throw SpecError(ErrorCode::INVALID_PARAMETER, step, "", "no columns selected");
  std::vector<std::size_t> plan;
  std::set<std::string> kept;
  for (const auto& ref : s.columns) {
    auto k = resolve_column(columns, ref, step);
    if (std::find(plan.begin(), plan.end(), k) != plan.end()) {
      throw SpecError(ErrorCode::DUPLICATE_COLUMN, step, columns[k].name, "column selected twice: " + columns[k].name);
    }
    plan.push_back(k);
    kept.insert(columns[k].name);
  }
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const auto& c = columns[k];
    if (c.extractor && !kept.count(c.name) && kept.count(c.derived_from)) plan.push_back(k);
  }
  return plan;
}

ExtractPlan extract_plan(const std::vector<Column>& columns, const ExtractFeature& e, std::size_t step) {
  auto k = resolve_column(columns, e.source, step);
  const auto& src = columns[k];
  if (src.kind != SemanticKind::TIMESTAMP) {
    throw SpecError(ErrorCode::EXTRACTOR_KIND_MISMATCH, step, src.name,
                    std::string(catalog::to_string(e.kind)) + " needs a TIMESTAMP column; " + src.name + " is " +
                        std::string(catalog::to_string(src.kind)));
  }
  std::string name = e.name.empty() ? default_name(src.name, e.kind) : e.name;
  if (has_name(columns, name)) {
    throw SpecError(ErrorCode::DUPLICATE_COLUMN, step, name, "column already exists: " + name);
  }
  Column c;
  c.name = std::move(name);
  c.kind = e.kind == ExtractorKind::WEEKDAY ? SemanticKind::CATEGORY : SemanticKind::NUMBER;
  c.property = src.property;
  c.domain_class = src.domain_class;
  c.source_step = step;
  c.dataset = src.dataset;
  c.dataset_short_name = src.dataset_short_name;
  c.extractor = e.kind;
  c.derived_from = src.name;
  return {k, std::move(c)};
}

IntegrationPlan integration_plan(const std::vector<Column>& left, const std::vector<Column>& right,
                                 const IntegrateDatasets& s, std::size_t step) {
  if (!(s.max_distance_m > 0) || !std::isfinite(s.max_distance_m)) {
    throw SpecError(ErrorCode::INVALID_PARAMETER, step, "", "max_distance_m must be a positive number");
  }
  auto gl = geo_columns(left);
  auto gr = geo_columns(right);
  IntegrationPlan plan;
  if (gl.points() && gr.polyline) {
    plan.left_is_points = true;
    plan.latitude = *gl.latitude;
    plan.longitude = *gl.longitude;
    plan.polyline = *gr.polyline;
  } else if (gr.points() && gl.polyline) {
    plan.left_is_points = false;
    plan.latitude = *gr.latitude;
    plan.longitude = *gr.longitude;
    plan.polyline = *gl.polyline;
  } else {
    throw SpecError(ErrorCode::INTEGRATION_KIND_MISMATCH, step, "",
                    "SPATIAL_NEAREST needs latitude and longitude GEO_POINT columns on one side and a "
                    "GEO_POLYLINE column on the other");
  }
  std::set<std::string> clashes;
  for (const auto& c : left) {
    if (has_name(right, c.name)) clashes.insert(c.name);
  }
  auto l = qualify(left, clashes);
  auto r = qualify(right, clashes);
  std::set<std::string> names;
  for (auto* side : {&l, &r}) {
    for (auto& c : *side) {
      if (!names.insert(c.name).second) {
        throw SpecError(ErrorCode::COLUMN_NAME_COLLISION, step, c.name, "qualified column name collides: " + c.name);
      }
      plan.columns.push_back(c);
    }
  }
  return plan;
}

SchemaState infer_state(const Specification& spec, const catalog::Catalog& c, const catalog::DomainModel& dm) {
  Checker checker(c, dm);
  for (std::size_t i = 0; i < spec.steps.size(); ++i) checker.apply(spec.steps[i], i);
  return checker.state;
}

ResultSchema infer_schema(const Specification& spec, const catalog::Catalog& c, const catalog::DomainModel& dm) {
  return infer_state(spec, c, dm).result();
}

StepResult add_step(const Specification& spec, Step step, const catalog::Catalog& c,
                    const catalog::DomainModel& dm) {
  Checker checker(c, dm);
  for (std::size_t i = 0; i < spec.steps.size(); ++i) checker.apply(spec.steps[i], i);
  checker.apply(step, spec.steps.size());
  Specification out = spec;
  out.steps.push_back(std::move(step));
  return {std::move(out), checker.state.result()};
}

std::vector<Suggestion> suggest_steps(const SchemaState& state) {
  std::vector<Suggestion> out;
  if (state.current) {
    const auto& cols = state.lineages[*state.current].columns;
    for (const auto& c : cols) {
      if (c.kind != SemanticKind::TIMESTAMP || c.extractor) continue;
      for (auto k : {ExtractorKind::WEEKDAY, ExtractorKind::HOUR_OF_DAY}) {
        bool done = std::any_of(cols.begin(), cols.end(),
                                [&](const Column& d) { return d.extractor == k && d.derived_from == c.name; });
        if (done || has_name(cols, default_name(c.name, k))) continue;
        out.push_back({ExtractFeature{c.name, k, ""},
                       std::string(catalog::to_string(k)) + " from timestamp column " + c.name});
      }
    }
  }
  for (std::size_t i = 0; i < state.lineages.size(); ++i) {
    for (std::size_t j = i + 1; j < state.lineages.size(); ++j) {
      if (state.lineages[i].consumed || state.lineages[j].consumed) continue;
      IntegrateDatasets s{i, j, IntegrationKind::SPATIAL_NEAREST, catalog::kDefaultMaxDistanceMeters};
      try {
        integration_plan(state.lineages[i].columns, state.lineages[j].columns, s, 0);
      } catch (const SpecError&) {
        continue;
      }
      out.push_back({s, "nearest street segment for each point of lineage " +
                            std::to_string(s.left) + " or " + std::to_string(s.right)});
    }
  }
  return out;
}

std::string format_schema(const ResultSchema& schema, const rdf::PrefixMap& prefixes) {
  auto show = [&](const Iri& iri) { return rdf::compact(iri, prefixes).value_or("<" + iri.value + ">"); };
  std::vector<std::vector<std::string>> rows{{"name", "kind", "property", "domain class", "step"}};
  for (const auto& c : schema.columns) {
    rows.push_back({c.name, std::string(catalog::to_string(c.kind)), show(c.property), show(c.domain_class),
                    std::to_string(c.source_step)});
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace sml::dataspec
