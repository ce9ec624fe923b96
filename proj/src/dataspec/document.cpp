#include <json.hpp>

#include "sml/dataspec/dataspec.h"

namespace sml::dataspec {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string& message) { throw Error(ErrorCode::MALFORMED_DOCUMENT, message); }

json step_json(const Step& step) {
  json j;
  j["op"] = std::string(step_kind(step));
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SelectDataset>) {
          j["dataset"] = s.dataset.value;
        } else if constexpr (std::is_same_v<T, SampleRows>) {
          j["method"] = std::string(to_string(s.method));
          j["n"] = s.n;
          if (s.seed) j["seed"] = *s.seed;
        } else if constexpr (std::is_same_v<T, SelectFeatures>) {
          j["columns"] = s.columns;
        } else if constexpr (std::is_same_v<T, ExtractFeature>) {
          j["source"] = s.source;
          j["kind"] = std::string(catalog::to_string(s.kind));
          if (!s.name.empty()) j["name"] = s.name;
        } else {
          j["left"] = s.left;
          j["right"] = s.right;
          j["kind"] = std::string(catalog::to_string(s.kind));
          j["max_distance_m"] = s.max_distance_m;
        }
      },
      step);
  return j;
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string text(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) malformed(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::uint64_t unsigned_number(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned()) malformed(std::string("field \"") + key + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

Step step_from_json(const json& j) {
  if (!j.is_object()) malformed("a step must be an object");
  auto op = text(j, "op");
  if (op == "select_dataset") return SelectDataset{Iri{text(j, "dataset")}};
  if (op == "sample_rows") {
    SampleRows s;
    auto m = text(j, "method");
    if (m == "HEAD") s.method = SampleMethod::HEAD;
    else if (m == "RANDOM") s.method = SampleMethod::RANDOM;
    else malformed("unknown sampling method " + m);
    s.n = unsigned_number(j, "n");
    if (j.contains("seed")) s.seed = unsigned_number(j, "seed");
    return s;
  }
  if (op == "select_features") {
    const auto& cols = field(j, "columns");
    if (!cols.is_array()) malformed("field \"columns\" must be an array");
    SelectFeatures s;
    for (const auto& c : cols) {
      if (!c.is_string()) malformed("column references must be strings");
      s.columns.push_back(c.get<std::string>());
    }
    return s;
  }
  if (op == "extract_feature") {
    ExtractFeature e;
    e.source = text(j, "source");
    auto k = catalog::extractor_kind_from_string(text(j, "kind"));
    if (!k) malformed("unknown extractor kind " + text(j, "kind"));
    e.kind = *k;
    if (j.contains("name")) e.name = text(j, "name");
    return e;
  }
  if (op == "integrate_datasets") {
    IntegrateDatasets s;
    s.left = unsigned_number(j, "left");
    s.right = unsigned_number(j, "right");
    auto k = catalog::integration_kind_from_string(text(j, "kind"));
    if (!k) malformed("unknown integration kind " + text(j, "kind"));
    s.kind = *k;
    const auto& d = field(j, "max_distance_m");
    if (!d.is_number()) malformed("field \"max_distance_m\" must be a number");
    s.max_distance_m = d.get<double>();
    return s;
  }
  throw Error(ErrorCode::UNKNOWN_STEP_KIND, "unknown step kind: " + op);
}

}  // namespace

std::string save_step(const Step& step) { return step_json(step).dump(); }

Step parse_step(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("not a JSON document: ") + e.what());
  }
  return step_from_json(j);
}

std::string save_spec(const Specification& spec) {
  json head;
  head["format"] = std::string(kSpecFormat);
  head["version"] = kSpecVersion;
  head["id"] = spec.id;
  head["catalog"] = {{"iri", spec.catalog_iri}, {"digest", spec.catalog_digest}};
  std::string h = head.dump();
  h.pop_back();
  std::string out = h + ",\"steps\":[";
  for (std::size_t i = 0; i < spec.steps.size(); ++i) {
    out += "\n" + step_json(spec.steps[i]).dump();
    if (i + 1 < spec.steps.size()) out += ",";
  }
  out += spec.steps.empty() ? "]}\n" : "\n]}\n";
  return out;
}

Specification parse_spec(std::string_view document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    malformed(std::string("not a JSON document: ") + e.what());
  }
  if (!j.is_object()) malformed("document must be a JSON object");
  if (text(j, "format") != kSpecFormat) malformed("not a " + std::string(kSpecFormat) + " document");
  const auto& v = field(j, "version");
  if (!v.is_number_integer()) malformed("field \"version\" must be an integer");
  if (v.get<std::int64_t>() != kSpecVersion) {
    throw Error(ErrorCode::VERSION_MISMATCH, "unsupported version " + v.dump() + "; expected " +
                                                 std::to_string(kSpecVersion));
  }
  Specification spec;
  if (j.contains("id")) spec.id = text(j, "id");
  if (j.contains("catalog")) {
    const auto& c = j["catalog"];
    if (!c.is_object()) malformed("field \"catalog\" must be an object");
    if (c.contains("iri")) spec.catalog_iri = text(c, "iri");
    if (c.contains("digest")) spec.catalog_digest = text(c, "digest");
  }
  const auto& steps = field(j, "steps");
  if (!steps.is_array()) malformed("field \"steps\" must be an array");
  for (const auto& s : steps) spec.steps.push_back(step_from_json(s));
  return spec;
}

LoadedSpec load_spec(std::string_view document, const catalog::Catalog& c, const catalog::DomainModel& dm,
                     std::string_view catalog_digest) {
  LoadedSpec out;
  out.spec = parse_spec(document);
  if (!catalog_digest.empty() && out.spec.catalog_digest != catalog_digest) {
    out.diagnostics.push_back({Severity::WARNING,
                               "catalog changed since the spec was saved: " + out.spec.catalog_digest + " now " +
                                   std::string(catalog_digest),
                               out.spec.catalog_iri});
  }
  try {
    out.state = infer_state(out.spec, c, dm);
  } catch (const SpecError& e) {
    std::string where = e.step() ? "step " + std::to_string(*e.step()) : std::string();
    out.diagnostics.push_back({Severity::ERROR, std::string(to_string(e.code())) + ": " + e.what(), where});
    out.error = e;
  }
  return out;
}

}  // namespace sml::dataspec
