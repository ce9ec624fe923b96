#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "sml/dataspec/dataspec.h"
#include "sml/rdf/vocabulary.h"
#include "support/fixtures.h"
#include "support/metadata_only.h"

using namespace sml;
using namespace sml::dataspec;
using fixtures::sml_iri;

namespace {

class Dataspec : public fixtures::MetadataOnly {
 protected:
  catalog::Catalog cat = fixtures::mobility_catalog();
  catalog::DomainModel dm = fixtures::mobility_domain();

  Specification build(const std::vector<Step>& steps) {
    Specification s;
    for (const auto& step : steps) s = add_step(s, step, cat, dm).spec;
    return s;
  }

  ErrorCode error_of(const Specification& s, const Step& step) {
    try {
      add_step(s, step, cat, dm);
    } catch (const SpecError& e) {
      return e.code();
    }
    ADD_FAILURE() << "step was accepted";
    return ErrorCode::USAGE;
  }
};

std::vector<std::string> names(const ResultSchema& s) {
  std::vector<std::string> out;
  for (const auto& c : s.columns) out.push_back(c.name);
  return out;
}

const Step kSelectF = SelectDataset{sml_iri("FCDDataset")};
const Step kSelectO = SelectDataset{sml_iri("OSMDataset")};

}  // namespace

TEST_F(Dataspec, EmptySpecHasEmptySchema) {
  EXPECT_TRUE(infer_schema({}, cat, dm).columns.empty());
  EXPECT_FALSE(infer_state({}, cat, dm).current);
}

TEST_F(Dataspec, SelectDatasetGivesMappedAttributesInColumnOrder) {
  auto schema = add_step({}, kSelectF, cat, dm).schema;
  EXPECT_EQ(names(schema), (std::vector<std::string>{"vehicle id", "type", "speed", "time", "latitude", "longitude"}));
  const auto& c = schema.columns[0];
  EXPECT_EQ(c.kind, SemanticKind::IDENTIFIER);
  EXPECT_EQ(c.property, sml_iri("carId"));
  EXPECT_EQ(c.domain_class, sml_iri("FloatingCarDataPoint"));
  EXPECT_EQ(c.source_step, 0u);
  EXPECT_EQ(c.attribute, sml_iri("FCDDatasetAttribute1"));
  EXPECT_EQ(schema.columns[4].axis, GeoAxis::LATITUDE);
  EXPECT_EQ(schema.columns[3].kind, SemanticKind::TIMESTAMP);
}

TEST_F(Dataspec, VerbatimCatalogGivesVehicleIdColumn) {
  auto verbatim = catalog::load_catalog(fixtures::verbatim_catalog()).catalog;
  auto schema = add_step({}, kSelectF, verbatim, dm).schema;
  ASSERT_EQ(schema.columns.size(), 1u);
  EXPECT_EQ(schema.columns[0].name, "vehicle id");
  EXPECT_EQ(schema.columns[0].property, sml_iri("carId"));
}

TEST_F(Dataspec, UnmappedAttributesAreNotColumns) {
  auto g = fixtures::mobility_catalog_graph();
  for (const auto& t : g.match(sml_iri("FCDDatasetAttribute2"), vocab::sml::has_mapping(), std::nullopt)) g.erase(t);
  auto c = catalog::load_catalog(g).catalog;
  auto schema = add_step({}, kSelectF, c, dm).schema;
  EXPECT_EQ(schema.find("type"), nullptr);
  EXPECT_EQ(schema.columns.size(), 5u);
}

TEST_F(Dataspec, WorkedExampleFlow) {
  auto spec = build({kSelectF, SelectFeatures{{"type", "speed", "time", "latitude", "longitude"}},
                     ExtractFeature{"time", ExtractorKind::WEEKDAY, "time (day)"},
                     ExtractFeature{"time", ExtractorKind::HOUR_OF_DAY, "time (hour)"}, kSelectO,
                     SelectFeatures{{"type", "maxSpeed", "geometry"}},
                     IntegrateDatasets{0, 1, IntegrationKind::SPATIAL_NEAREST, 50.0}});
  auto joined = infer_schema(spec, cat, dm);
  EXPECT_EQ(names(joined), (std::vector<std::string>{"F.type", "speed", "time", "latitude", "longitude", "time (day)",
                                                     "time (hour)", "O.type", "maxSpeed", "geometry"}));
  auto r = add_step(spec, SelectFeatures{{"F.type", "speed", "time (day)", "time (hour)", "O.type", "maxSpeed"}}, cat, dm);
  EXPECT_EQ(names(r.schema),
            (std::vector<std::string>{"F.type", "speed", "time (day)", "time (hour)", "O.type", "maxSpeed"}));
  std::vector<SemanticKind> kinds;
  for (const auto& c : r.schema.columns) kinds.push_back(c.kind);
  EXPECT_EQ(kinds, (std::vector<SemanticKind>{SemanticKind::CATEGORY, SemanticKind::NUMBER, SemanticKind::CATEGORY,
                                              SemanticKind::NUMBER, SemanticKind::CATEGORY, SemanticKind::NUMBER}));
  EXPECT_EQ(r.schema.columns[2].extractor, ExtractorKind::WEEKDAY);
  EXPECT_EQ(r.schema.columns[2].property, sml_iri("hasTime"));
  EXPECT_EQ(r.schema.columns[2].source_step, 2u);
  EXPECT_EQ(r.schema.columns[4].domain_class, sml_iri("StreetSegment"));
  EXPECT_EQ(r.schema.columns[4].source_step, 4u);
  EXPECT_EQ(r.spec.steps, fixtures::worked_example_spec().steps);
}

TEST_F(Dataspec, ShippedSpecInfersTheTableHeader) {
  auto schema = infer_schema(fixtures::worked_example_spec(), cat, dm);
  EXPECT_EQ(names(schema),
            (std::vector<std::string>{"F.type", "speed", "time (day)", "time (hour)", "O.type", "maxSpeed"}));
}

TEST_F(Dataspec, AddStepLeavesTheInputUnchanged) {
  auto spec = build({kSelectF});
  auto copy = spec;
  add_step(spec, SelectFeatures{{"speed"}}, cat, dm);
  EXPECT_EQ(spec, copy);
  EXPECT_EQ(error_of(spec, SelectFeatures{{"nope"}}), ErrorCode::UNKNOWN_COLUMN);
  EXPECT_EQ(spec, copy);
}

TEST_F(Dataspec, ExtractionOnNumberIsRejected) {
  auto spec = build({kSelectF});
  try {
    add_step(spec, ExtractFeature{"speed", ExtractorKind::WEEKDAY, ""}, cat, dm);
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::EXTRACTOR_KIND_MISMATCH);
    EXPECT_EQ(e.column(), "speed");
    EXPECT_EQ(e.step(), 1u);
  }
}

TEST_F(Dataspec, StepErrors) {
  auto f = build({kSelectF});
  auto fo = build({kSelectF, kSelectO});
  EXPECT_EQ(error_of({}, SampleRows{SampleMethod::HEAD, 1, {}}), ErrorCode::NO_ACTIVE_LINEAGE);
  EXPECT_EQ(error_of({}, SelectFeatures{{"speed"}}), ErrorCode::NO_ACTIVE_LINEAGE);
  EXPECT_EQ(error_of(f, SampleRows{SampleMethod::HEAD, 0, {}}), ErrorCode::INVALID_PARAMETER);
  EXPECT_EQ(error_of(f, SampleRows{SampleMethod::RANDOM, 2, {}}), ErrorCode::MISSING_SEED);
  EXPECT_EQ(error_of(f, SelectFeatures{{"maxSpeed"}}), ErrorCode::UNKNOWN_COLUMN);
  EXPECT_EQ(error_of(f, SelectFeatures{{}}), ErrorCode::INVALID_PARAMETER);
  EXPECT_EQ(error_of(f, SelectFeatures{{"speed", "sml:hasSpeed"}}), ErrorCode::DUPLICATE_COLUMN);
  EXPECT_EQ(error_of(f, ExtractFeature{"time", ExtractorKind::HOUR_OF_DAY, "speed"}), ErrorCode::DUPLICATE_COLUMN);
  EXPECT_EQ(error_of(f, SelectDataset{sml_iri("NoDataset")}), ErrorCode::UNKNOWN_DATASET);
  EXPECT_EQ(error_of(fo, IntegrateDatasets{0, 2, IntegrationKind::SPATIAL_NEAREST, 50}), ErrorCode::UNKNOWN_LINEAGE);
  EXPECT_EQ(error_of(fo, IntegrateDatasets{0, 1, IntegrationKind::SPATIAL_NEAREST, 0}), ErrorCode::INVALID_PARAMETER);
  EXPECT_EQ(error_of(fo, IntegrateDatasets{1, 1, IntegrationKind::SPATIAL_NEAREST, 50}), ErrorCode::INVALID_PARAMETER);
  auto ff = build({kSelectF, kSelectF});
  EXPECT_EQ(error_of(ff, IntegrateDatasets{0, 1, IntegrationKind::SPATIAL_NEAREST, 50}),
            ErrorCode::INTEGRATION_KIND_MISMATCH);
  auto dropped = build({kSelectF, SelectFeatures{{"speed", "time"}}, kSelectO});
  EXPECT_EQ(error_of(dropped, IntegrateDatasets{0, 1, IntegrationKind::SPATIAL_NEAREST, 50}),
            ErrorCode::INTEGRATION_KIND_MISMATCH);
  auto joined = build({kSelectF, kSelectO, IntegrateDatasets{0, 1, IntegrationKind::SPATIAL_NEAREST, 50}});
  EXPECT_EQ(error_of(joined, IntegrateDatasets{0, 2, IntegrationKind::SPATIAL_NEAREST, 50}),
            ErrorCode::UNKNOWN_LINEAGE);
  EXPECT_EQ(error_of(joined, SelectFeatures{{"type"}}), ErrorCode::UNKNOWN_COLUMN);
  auto clash = build({kSelectF, ExtractFeature{"time", ExtractorKind::WEEKDAY, "O.type"}, kSelectO});
  EXPECT_EQ(error_of(clash, IntegrateDatasets{0, 1, IntegrationKind::SPATIAL_NEAREST, 50}),
            ErrorCode::COLUMN_NAME_COLLISION);
}

TEST_F(Dataspec, EveryErrorIsReproducible) {
  auto f = build({kSelectF});
  std::vector<std::pair<Specification, Step>> cases{
      {{}, SampleRows{}},
      {f, SampleRows{SampleMethod::RANDOM, 3, {}}},
      {f, ExtractFeature{"speed", ExtractorKind::HOUR_OF_DAY, ""}},
      {f, SelectFeatures{{"x"}}},
      {f, IntegrateDatasets{0, 0, IntegrationKind::SPATIAL_NEAREST, 50}},
      {f, SelectDataset{sml_iri("Missing")}},
  };
  for (const auto& [spec, step] : cases) {
    auto first = error_of(spec, step);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(error_of(spec, step), first);
  }
}

TEST_F(Dataspec, ColumnsResolveByPropertyIri) {
  auto f = build({kSelectF});
  auto a = add_step(f, SelectFeatures{{"sml:hasSpeed", "<https://simple-ml.de/ns#hasTime>"}}, cat, dm).schema;
  EXPECT_EQ(names(a), (std::vector<std::string>{"speed", "time"}));
  auto e = build({kSelectF, ExtractFeature{"time", ExtractorKind::WEEKDAY, ""}});
  EXPECT_EQ(infer_schema(e, cat, dm).columns.back().name, "time (day)");
  // The extracted column shares the property but is not a candidate.
  EXPECT_EQ(names(add_step(e, SelectFeatures{{"sml:hasTime"}}, cat, dm).schema),
            (std::vector<std::string>{"time", "time (day)"}));
}

TEST_F(Dataspec, PolylineOnTheLeftKeepsLeftColumnsFirst) {
  auto spec = build({kSelectF, kSelectO, IntegrateDatasets{1, 0, IntegrationKind::SPATIAL_NEAREST, 25}});
  auto schema = infer_schema(spec, cat, dm);
  EXPECT_EQ(schema.columns.front().name, "segment id");
  EXPECT_EQ(schema.columns[1].name, "O.type");
  EXPECT_EQ(schema.columns.back().name, "longitude");
}

TEST_F(Dataspec, RenamedSourcesKeepTheirExtractions) {
  auto g = fixtures::mobility_catalog_graph();
  // An O column named "time" forces the F time column to be qualified.
  g.erase({sml_iri("OSMDatasetAttribute3"), vocab::dcterms::identifier(), rdf::plain("maxSpeed")});
  g.insert({sml_iri("OSMDatasetAttribute3"), vocab::dcterms::identifier(), rdf::plain("time")});
  auto c = catalog::load_catalog(g).catalog;
  Specification s;
  for (Step step : std::vector<Step>{kSelectF, ExtractFeature{"time", ExtractorKind::WEEKDAY, ""}, kSelectO,
                                     IntegrateDatasets{0, 1, IntegrationKind::SPATIAL_NEAREST, 50}}) {
    s = add_step(s, step, c, dm).spec;
  }
  auto r = add_step(s, SelectFeatures{{"F.time"}}, c, dm).schema;
  EXPECT_EQ(names(r), (std::vector<std::string>{"F.time", "time (day)"}));
  EXPECT_EQ(r.columns[1].derived_from, "F.time");
}

TEST_F(Dataspec, InferenceIsDeterministic) {
  auto spec = fixtures::worked_example_spec();
  auto a = infer_state(spec, cat, dm);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(infer_state(spec, cat, dm), a);
}

TEST_F(Dataspec, SelectionAndExtractionCommute) {
  const std::vector<std::string> all{"vehicle id", "type", "speed", "time", "latitude", "longitude"};
  std::mt19937 rng(7);
  auto strip = [](ResultSchema s) {
    for (auto& c : s.columns) c.source_step = 0;
    return s;
  };
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> cols = all;
    std::shuffle(cols.begin(), cols.end(), rng);
    cols.resize(1 + rng() % cols.size());
    if (std::find(cols.begin(), cols.end(), "time") == cols.end()) cols.push_back("time");
    auto kind = trial % 2 ? ExtractorKind::WEEKDAY : ExtractorKind::HOUR_OF_DAY;
    Step sel = SelectFeatures{cols};
    Step ext = ExtractFeature{"time", kind, ""};
    auto a = infer_schema(build({kSelectF, sel, ext}), cat, dm);
    auto b = infer_schema(build({kSelectF, ext, sel}), cat, dm);
    EXPECT_EQ(strip(a), strip(b)) << "trial " << trial;
  }
}

TEST_F(Dataspec, RemovedDatasetIsAReferenceError) {
  auto spec = fixtures::worked_example_spec();
  auto c = cat;
  c.datasets.erase(std::remove_if(c.datasets.begin(), c.datasets.end(),
                                  [](const catalog::DatasetProfile& d) { return d.iri == sml_iri("OSMDataset"); }),
                   c.datasets.end());
  try {
    infer_schema(spec, c, dm);
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::UNKNOWN_DATASET);
    EXPECT_EQ(e.step(), 4u);
    EXPECT_NE(std::string(e.what()).find(sml_iri("OSMDataset").value), std::string::npos);
  }
}

TEST_F(Dataspec, Suggestions) {
  auto f = build({kSelectF});
  auto s = suggest_steps(infer_state(f, cat, dm));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(std::get<ExtractFeature>(s[0].step), (ExtractFeature{"time", ExtractorKind::WEEKDAY, ""}));
  EXPECT_EQ(std::get<ExtractFeature>(s[1].step), (ExtractFeature{"time", ExtractorKind::HOUR_OF_DAY, ""}));
  auto done = build({kSelectF, ExtractFeature{"time", ExtractorKind::WEEKDAY, "day"},
                     ExtractFeature{"time", ExtractorKind::HOUR_OF_DAY, ""}, kSelectO});
  auto t = suggest_steps(infer_state(done, cat, dm));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(std::get<IntegrateDatasets>(t[0].step),
            (IntegrateDatasets{0, 1, IntegrationKind::SPATIAL_NEAREST, catalog::kDefaultMaxDistanceMeters}));
  // Each suggestion type-checks.
  for (const auto& x : t) EXPECT_NO_THROW(add_step(done, x.step, cat, dm));
  for (const auto& x : s) EXPECT_NO_THROW(add_step(f, x.step, cat, dm));
}

TEST_F(Dataspec, SchemaTable) {
  auto text = format_schema(infer_schema(build({kSelectF, SelectFeatures{{"speed"}}}), cat, dm),
                            rdf::standard_prefixes());
  EXPECT_EQ(text,
            "name   kind    property      domain class              step\n"
            "speed  NUMBER  sml:hasSpeed  sml:FloatingCarDataPoint  0\n");
}

TEST_F(Dataspec, DocumentRoundTrip) {
  auto doc = fixtures::worked_example_document();
  auto spec = parse_spec(doc);
  EXPECT_EQ(save_spec(spec), doc);
  EXPECT_EQ(parse_spec(save_spec(spec)), spec);
  Specification random;
  random.id = "r";
  random.steps = {kSelectF, SampleRows{SampleMethod::RANDOM, 2, 18446744073709551615ull},
                  SampleRows{SampleMethod::HEAD, 1, {}}, IntegrateDatasets{3, 4, IntegrationKind::SPATIAL_NEAREST, 0.1}};
  EXPECT_EQ(parse_spec(save_spec(random)), random);
}

TEST_F(Dataspec, EmptyDocument) {
  auto doc = save_spec({});
  EXPECT_EQ(doc, "{\"format\":\"simple-ml-dataspec\",\"version\":1,\"id\":\"\",\"catalog\":{\"iri\":\"\",\"digest\":\"\"},\"steps\":[]}\n");
  auto l = load_spec(doc, cat, dm, "");
  EXPECT_TRUE(l.spec.steps.empty());
  EXPECT_FALSE(l.error);
  EXPECT_TRUE(l.diagnostics.empty());
}

TEST_F(Dataspec, DocumentErrors) {
  auto code = [](std::string_view doc) {
    try {
      parse_spec(doc);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::USAGE;
  };
  const std::string head = R"({"format":"simple-ml-dataspec","version":1,"steps":[)";
  EXPECT_EQ(code("{"), ErrorCode::MALFORMED_DOCUMENT);
  EXPECT_EQ(code("[]"), ErrorCode::MALFORMED_DOCUMENT);
  EXPECT_EQ(code(R"({"format":"other","version":1,"steps":[]})"), ErrorCode::MALFORMED_DOCUMENT);
  EXPECT_EQ(code(R"({"format":"simple-ml-dataspec","version":2,"steps":[]})"), ErrorCode::VERSION_MISMATCH);
  EXPECT_EQ(code(R"({"format":"simple-ml-dataspec","steps":[]})"), ErrorCode::MALFORMED_DOCUMENT);
  EXPECT_EQ(code(head + R"({"op":"sample_rows","method":"HEAD","n":-1}]})"), ErrorCode::MALFORMED_DOCUMENT);
  EXPECT_EQ(code(head + R"({"op":"extract_feature","source":"t","kind":"MONTH"}]})"), ErrorCode::MALFORMED_DOCUMENT);
  EXPECT_EQ(code(head + R"({"dataset":"x"}]})"), ErrorCode::MALFORMED_DOCUMENT);
  try {
    parse_spec(head + R"({"op":"pivot_table"}]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UNKNOWN_STEP_KIND);
    EXPECT_NE(std::string(e.what()).find("pivot_table"), std::string::npos);
  }
}

TEST_F(Dataspec, LoadReportsDriftAndRevalidates) {
  auto doc = fixtures::worked_example_document();
  auto digest = catalog::graph_digest(fixtures::mobility_catalog_graph());
  auto same = load_spec(doc, cat, dm, digest);
  EXPECT_TRUE(same.diagnostics.empty());
  ASSERT_TRUE(same.state);
  EXPECT_EQ(same.state->result().columns.size(), 6u);

  auto drift = load_spec(doc, cat, dm, "fnv1a64:0000000000000000");
  ASSERT_EQ(drift.diagnostics.size(), 1u);
  EXPECT_EQ(drift.diagnostics[0].severity, Severity::WARNING);
  EXPECT_TRUE(drift.state);

  catalog::Catalog only_f = cat;
  only_f.datasets.pop_back();
  auto broken = load_spec(doc, only_f, dm, digest);
  EXPECT_FALSE(broken.state);
  ASSERT_TRUE(broken.error);
  EXPECT_EQ(broken.error->code(), ErrorCode::UNKNOWN_DATASET);
  EXPECT_EQ(broken.spec, parse_spec(doc));
}
