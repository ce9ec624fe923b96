#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "sml/catalog/catalog.h"
#include "sml/rdf/isomorphism.h"
#include "sml/rdf/turtle.h"
#include "sml/rdf/vocabulary.h"
#include "sml/sparql/query.h"
#include "support/fixtures.h"
#include "support/metadata_only.h"

using namespace sml;
using namespace sml::catalog;

namespace {

Iri sml_(std::string_view local) { return vocab::sml::term(local); }

std::vector<ViolationKind> kinds(const std::vector<Violation>& v) {
  std::vector<ViolationKind> out;
  for (const auto& x : v) out.push_back(x.kind);
  return out;
}

bool has_diagnostic(const std::vector<Diagnostic>& d, std::string_view message, std::string_view subject) {
  return std::any_of(d.begin(), d.end(),
                     [&](const Diagnostic& x) { return x.message == message && x.subject == subject; });
}

rdf::Graph without(rdf::Graph g, const rdf::Term& s, const Iri& p) {
  for (const auto& t : g.match(s, p, std::nullopt)) g.erase(t);
  return g;
}

rdf::Graph with(rdf::Graph g, const rdf::Triple& t) {
  g.insert(t);
  return g;
}

// The mapping node of an attribute (a blank node in the fixtures).
rdf::Term mapping_node(const rdf::Graph& g, const Iri& attribute) {
  return *g.object(attribute, vocab::sml::has_mapping());
}

}  // namespace

class AttributesOf : public fixtures::MetadataOnly {};
class DatasetsForClass : public fixtures::MetadataOnly {};
class DomainModels : public fixtures::MetadataOnly {};
class LoadCatalog : public fixtures::MetadataOnly {};
class Suggestions : public fixtures::MetadataOnly {};
class Validate : public fixtures::MetadataOnly {};

TEST_F(DomainModels, MobilityFixtureLoadsCleanly) {
  auto r = load_domain_model(fixtures::graph("mobility-domain.ttl"));
  EXPECT_TRUE(r.diagnostics.empty()) << (r.diagnostics.empty() ? "" : format(r.diagnostics[0]));
  const auto& dm = r.model;
  for (const char* c : {"FloatingCarDataPoint", "TrafficFlow", "WeatherRecord", "SpeedLimit", "AccidentType",
                        "VehicleType", "StreetSegment"}) {
    EXPECT_TRUE(dm.is_subclass_of(sml_(c), sml_("MobilityClass"))) << c;
    EXPECT_TRUE(dm.is_domain_class(sml_(c))) << c;
  }
  EXPECT_TRUE(dm.is_domain_class(Iri{"http://schema.org/Event"}));
  EXPECT_TRUE(dm.is_domain_class(Iri{"http://rdfs.org/sioc/ns#Post"}));
  EXPECT_TRUE(dm.is_domain_class(Iri{"http://purl.org/dc/terms/Location"}));
  EXPECT_EQ(dm.property(sml_("hasTime"))->kind, SemanticKind::TIMESTAMP);
  EXPECT_EQ(dm.property(sml_("hasSpeed"))->kind, SemanticKind::NUMBER);
  EXPECT_EQ(dm.property(sml_("latitude"))->axis, GeoAxis::LATITUDE);
  EXPECT_EQ(dm.property(sml_("geometry"))->kind, SemanticKind::GEO_POLYLINE);
  EXPECT_EQ(dm.property(sml_("hasVehicleType"))->range, sml_("VehicleType"));
  EXPECT_EQ(dm.property(sml_("carId"))->domain, sml_("FloatingCarDataPoint"));
  EXPECT_EQ(dm.descendants(sml_("MobilityClass")).size(), 11u);
}

TEST_F(DomainModels, KindIsInferredFromRange) {
  auto g = rdf::parse_turtle(R"(
    @prefix sml: <https://simple-ml.de/ns#> .
    @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
    @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
    sml:C rdfs:subClassOf sml:DomainClass .
    sml:K rdfs:subClassOf sml:DomainClass .
    sml:t rdfs:domain sml:C ; rdfs:range xsd:dateTime .
    sml:n rdfs:domain sml:C ; rdfs:range xsd:double .
    sml:k rdfs:domain sml:C ; rdfs:range sml:K .
    sml:s rdfs:domain sml:C ; rdfs:range xsd:string .
  )").graph;
  auto r = load_domain_model(g);
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_EQ(r.model.property(sml_("t"))->kind, SemanticKind::TIMESTAMP);
  EXPECT_EQ(r.model.property(sml_("n"))->kind, SemanticKind::NUMBER);
  EXPECT_EQ(r.model.property(sml_("k"))->kind, SemanticKind::CATEGORY);
  EXPECT_EQ(r.model.property(sml_("s"))->kind, SemanticKind::TEXT);
}

TEST_F(DomainModels, InconsistentKindIsRejected) {
  auto g = rdf::parse_turtle(R"(
    @prefix sml: <https://simple-ml.de/ns#> .
    @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
    @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
    sml:C rdfs:subClassOf sml:DomainClass .
    sml:t rdfs:domain sml:C ; rdfs:range xsd:string ; sml:semanticKind "TIMESTAMP" .
    sml:u rdfs:domain sml:Nowhere ; rdfs:range xsd:string .
    sml:p rdfs:domain sml:C ; rdfs:range xsd:decimal ; sml:semanticKind "GEO_POINT" .
  )").graph;
  auto r = load_domain_model(g);
  EXPECT_EQ(r.diagnostics.size(), 3u);
  EXPECT_TRUE(r.model.properties().empty());
}

TEST_F(DomainModels, SubclassCycleIsBroken) {
  auto g = rdf::parse_turtle(R"(
    @prefix sml: <https://simple-ml.de/ns#> .
    @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
    sml:A rdfs:subClassOf sml:B .
    sml:B rdfs:subClassOf sml:A .
  )").graph;
  auto r = load_domain_model(g);
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].message, "subclass cycle; superclass link dropped");
  // Terminates and reports the remaining chain.
  EXPECT_FALSE(r.model.is_domain_class(sml_("A")));
  EXPECT_TRUE(r.model.is_subclass_of(sml_("B"), sml_("A")) || r.model.is_subclass_of(sml_("A"), sml_("B")));
}

TEST_F(LoadCatalog, VerbatimCatalog) {
  auto r = load_catalog(fixtures::verbatim_catalog());
  EXPECT_TRUE(r.diagnostics.empty()) << (r.diagnostics.empty() ? "" : format(r.diagnostics[0]));
  const auto& c = r.catalog;
  ASSERT_EQ(c.catalogs.size(), 1u);
  EXPECT_EQ(c.catalogs[0], sml_("SimpleMLCatalog"));
  ASSERT_EQ(c.datasets.size(), 1u);
  const auto& d = c.datasets[0];
  EXPECT_EQ(d.iri, sml_("FCDDataset"));
  EXPECT_EQ(d.title, "Floating Car Data");
  ASSERT_TRUE(d.temporal);
  EXPECT_EQ(d.temporal->start->lexical, "2017-08-01");
  EXPECT_EQ(d.temporal->end->lexical, "2017-12-31");
  ASSERT_TRUE(d.access);
  EXPECT_EQ(d.access->kind, AccessKind::TEXT_FILE);
  EXPECT_EQ(d.access->separator, ";");
  EXPECT_EQ(d.access->format, "text/comma-separated-values");
  EXPECT_FALSE(d.access->file_location);
  ASSERT_EQ(d.attributes.size(), 1u);
  const auto& a = d.attributes[0];
  EXPECT_EQ(a.column_number, 0);
  EXPECT_EQ(a.identifier, "vehicle id");
  EXPECT_FALSE(a.identifier_declared);
  EXPECT_EQ(a.mapping(), (Mapping{sml_("carId"), sml_("FloatingCarDataPoint")}));
  EXPECT_TRUE(c.residual.empty());
}

TEST_F(LoadCatalog, EmptyGraph) {
  auto r = load_catalog(rdf::Graph{});
  EXPECT_TRUE(r.catalog.datasets.empty());
  EXPECT_TRUE(has_diagnostic(r.diagnostics, "no dcat:Catalog found", ""));
}

TEST_F(LoadCatalog, MissingAccessDescriptor) {
  auto g = without(fixtures::verbatim_catalog(), sml_("FCDDataset"), vocab::sml::has_file());
  auto r = load_catalog(g);
  EXPECT_TRUE(has_diagnostic(r.diagnostics, "dataset has no access descriptor", sml_("FCDDataset").value));
  ASSERT_EQ(r.catalog.datasets.size(), 1u);
  EXPECT_FALSE(r.catalog.datasets[0].access);
  // The orphaned file description survives as residual.
  EXPECT_FALSE(r.catalog.residual.empty());
}

TEST_F(LoadCatalog, MissingLocatorAndDatasetLink) {
  auto g = without(fixtures::verbatim_catalog(), sml_("FCDDatasetAttribute1"), vocab::sml::column_number());
  auto r = load_catalog(g);
  EXPECT_TRUE(has_diagnostic(r.diagnostics, "attribute has no column locator", sml_("FCDDatasetAttribute1").value));
  g = without(fixtures::verbatim_catalog(), sml_("SimpleMLCatalog"), vocab::dcat::dataset());
  r = load_catalog(g);
  EXPECT_TRUE(has_diagnostic(r.diagnostics, "catalog has no dcat:dataset", sml_("SimpleMLCatalog").value));
  // Still found through its type.
  ASSERT_EQ(r.catalog.datasets.size(), 1u);
  EXPECT_FALSE(r.catalog.datasets[0].catalog);
}

TEST_F(LoadCatalog, MobilityFixture) {
  auto r = load_catalog(fixtures::mobility_catalog_graph());
  EXPECT_TRUE(r.diagnostics.empty()) << (r.diagnostics.empty() ? "" : format(r.diagnostics[0]));
  const auto& c = r.catalog;
  ASSERT_EQ(c.datasets.size(), 2u);
  const auto* f = c.dataset(sml_("FCDDataset"));
  const auto* o = c.dataset(sml_("OSMDataset"));
  ASSERT_TRUE(f && o);
  EXPECT_EQ(f->short_name, "F");
  EXPECT_EQ(o->short_name, "O");
  EXPECT_EQ(f->attributes.size(), 6u);
  EXPECT_EQ(o->attributes.size(), 4u);
  EXPECT_EQ(f->access->file_location, "data/fcd.csv");
  EXPECT_EQ(f->access->header(), false);
  EXPECT_EQ(o->access->header(), true);
  EXPECT_EQ(o->access->separator_char(), ',');
  for (std::size_t i = 0; i < f->attributes.size(); ++i) {
    EXPECT_EQ(f->attributes[i].column_number, static_cast<std::int64_t>(i));
  }
  EXPECT_EQ(c.find_dataset("O", {}), o);
  EXPECT_EQ(c.find_dataset("sml:FCDDataset", rdf::standard_prefixes()), f);
  EXPECT_EQ(c.find_dataset("nope", {}), nullptr);
}

TEST_F(LoadCatalog, UnknownTriplesPassThrough) {
  auto g = fixtures::verbatim_catalog();
  const Iri license{"http://purl.org/dc/terms/license"};
  g.insert({sml_("FCDDataset"), license, Iri{"https://example.org/odbl"}});
  g.insert({sml_("FCDDatasetAttribute1"), sml_("unit"), rdf::plain("km/h")});
  g.insert({sml_("Elsewhere"), sml_("p"), rdf::plain("x")});
  auto c = load_catalog(g).catalog;
  const auto& d = c.datasets[0];
  ASSERT_EQ(d.extra.size(), 1u);
  EXPECT_EQ(d.extra[0].first, license);
  ASSERT_EQ(d.attributes[0].extra.size(), 1u);
  EXPECT_EQ(c.residual.size(), 1u);
  EXPECT_EQ(emit_catalog(c), g);
}

TEST_F(LoadCatalog, EmitIsAFixpoint) {
  for (const auto& g : {fixtures::verbatim_catalog(), fixtures::mobility_catalog_graph()}) {
    Catalog c = load_catalog(g).catalog;
    rdf::Graph emitted = emit_catalog(c);
    EXPECT_EQ(load_catalog(emitted).catalog, c);
    // Through Turtle text the blank labels may change, the structure not.
    rdf::Graph reparsed = rdf::parse_turtle(rdf::serialize_turtle(emitted)).graph;
    EXPECT_TRUE(rdf::graph_isomorphic(reparsed, emitted));
    EXPECT_TRUE(rdf::graph_isomorphic(emit_catalog(load_catalog(reparsed).catalog), emitted));
  }
}

TEST_F(LoadCatalog, FixpointUnderRandomMutations) {
  std::mt19937 rng(7);
  rdf::Graph base = fixtures::mobility_catalog_graph();
  std::vector<rdf::Triple> triples(base.begin(), base.end());
  std::vector<Iri> predicates;
  for (const auto& t : triples) predicates.push_back(t.predicate);
  for (int trial = 0; trial < 100; ++trial) {
    rdf::Graph g = base;
    for (int k = 0; k < 4; ++k) {
      if (rng() % 2) {
        g.erase(triples[rng() % triples.size()]);
      } else {
        const auto& s = triples[rng() % triples.size()].subject;
        g.insert({s, predicates[rng() % predicates.size()], rdf::plain("m" + std::to_string(rng() % 5))});
      }
    }
    Catalog c = load_catalog(g).catalog;
    ASSERT_EQ(load_catalog(emit_catalog(c)).catalog, c) << "trial " << trial;
  }
}

TEST_F(Validate, PristineFixturesHaveNoViolations) {
  auto dm = fixtures::mobility_domain();
  EXPECT_TRUE(validate(load_catalog(fixtures::verbatim_catalog()).catalog, dm).empty());
  auto v = validate(fixtures::mobility_catalog(), dm);
  EXPECT_TRUE(v.empty()) << (v.empty() ? "" : v[0].message);
}

TEST_F(Validate, UnknownDomainClass) {
  auto g = fixtures::verbatim_catalog();
  auto node = mapping_node(g, sml_("FCDDatasetAttribute1"));
  g = without(g, node, vocab::sml::maps_to_domain());
  g.insert({node, vocab::sml::maps_to_domain(), sml_("Spaceship")});
  auto v = validate(load_catalog(g).catalog, fixtures::mobility_domain());
  EXPECT_EQ(kinds(v), std::vector{ViolationKind::UNKNOWN_DOMAIN_CLASS});
  EXPECT_EQ(v[0].subject, sml_("FCDDatasetAttribute1").value);
}

TEST_F(Validate, LocatorMismatch) {
  auto g = with(fixtures::verbatim_catalog(), {sml_("FCDDatasetAttribute1"), vocab::sml::column_name(), rdf::plain("vid")});
  EXPECT_EQ(kinds(validate(load_catalog(g).catalog, fixtures::mobility_domain())),
            std::vector{ViolationKind::LOCATOR_MISMATCH});
}

TEST_F(Validate, DeletedAccessDescriptor) {
  auto g = without(fixtures::verbatim_catalog(), sml_("FCDDataset"), vocab::sml::has_file());
  EXPECT_EQ(kinds(validate(load_catalog(g).catalog, fixtures::mobility_domain())),
            std::vector{ViolationKind::MISSING_ACCESS_DESCRIPTOR});
}

TEST_F(Validate, OtherRules) {
  auto dm = fixtures::mobility_domain();
  auto node = mapping_node(fixtures::verbatim_catalog(), sml_("FCDDatasetAttribute1"));
  auto check = [&](const rdf::Graph& g, ViolationKind k) {
    EXPECT_EQ(kinds(validate(load_catalog(g).catalog, dm)), std::vector{k}) << to_string(k);
  };
  auto swap = [](rdf::Graph g, const rdf::Term& s, const Iri& p, const rdf::Term& o) {
    g = without(std::move(g), s, p);
    g.insert({s, p, o});
    return g;
  };
  auto g = fixtures::verbatim_catalog();
  check(swap(g, node, vocab::sml::maps_to_domain(), vocab::dcat::catalog()), ViolationKind::UNKNOWN_DOMAIN_CLASS);
  check(swap(g, node, vocab::sml::maps_to_domain(), sml_("DomainClass")), ViolationKind::PROPERTY_DOMAIN_MISMATCH);
  check(swap(g, node, vocab::sml::maps_to_domain(), sml_("StreetSegment")),
        ViolationKind::PROPERTY_DOMAIN_MISMATCH);
  check(swap(g, node, vocab::sml::maps_to_property(), sml_("colour")), ViolationKind::UNKNOWN_PROPERTY);
  check(without(g, node, vocab::sml::maps_to_property()), ViolationKind::INCOMPLETE_MAPPING);
  check(without(g, sml_("FCDDatasetAttribute1"), vocab::sml::column_number()),
        ViolationKind::MISSING_COLUMN_LOCATOR);
  check(swap(g, sml_("FCDDatasetFile"), vocab::csvw::separator(), rdf::plain(";;")),
        ViolationKind::INCOMPLETE_ACCESS_DESCRIPTOR);
  check(without(g, sml_("FCDDataset"), vocab::sml::has_attribute()), ViolationKind::DATASET_WITHOUT_ATTRIBUTES);
  check(without(g, sml_("SimpleMLCatalog"), vocab::dcat::dataset()), ViolationKind::DATASET_NOT_IN_CATALOG);
  auto temporal = *g.object(sml_("FCDDataset"), vocab::dcterms::temporal());
  check(swap(g, temporal, vocab::so::start_date(), rdf::typed("2018-01-01", vocab::xsd::date())),
        ViolationKind::TEMPORAL_ORDER);
  check(without(g, temporal, vocab::so::end_date()), ViolationKind::INCOMPLETE_TEMPORAL_COVERAGE);

  // A class outside the sml:DomainClass hierarchy.
  auto dm_graph = fixtures::graph("mobility-domain.ttl");
  dm_graph.insert({sml_("Loose"), vocab::rdf::type(), vocab::rdfs::klass()});
  auto loose = load_domain_model(dm_graph).model;
  EXPECT_EQ(kinds(validate(load_catalog(swap(g, node, vocab::sml::maps_to_domain(), sml_("Loose"))).catalog, loose)),
            std::vector{ViolationKind::NOT_A_DOMAIN_CLASS});
}

TEST_F(Validate, DatabaseLocators) {
  auto g = rdf::parse_turtle(R"(
    sml:Cat a dcat:Catalog ; dcat:dataset sml:D .
    sml:D a dcat:Dataset ; dcterms:title "db" ; sml:hasDatabase sml:Db ;
        sml:hasAttribute sml:A1 , sml:A2 .
    sml:Db a sml:Database ; sml:connection "postgres://host/db" .
    sml:A1 a sml:Attribute ; sml:columnName "speed" .
    sml:A2 a sml:Attribute ; sml:columnNumber 3 .
  )", rdf::standard_prefixes()).graph;
  auto c = load_catalog(g).catalog;
  EXPECT_EQ(c.datasets[0].access->kind, AccessKind::DATABASE);
  EXPECT_EQ(kinds(validate(c, fixtures::mobility_domain())),
            (std::vector{ViolationKind::INCOMPLETE_ACCESS_DESCRIPTOR, ViolationKind::LOCATOR_MISMATCH}));
}

// Removing any one mandatory triple from a fixture, pristine or already
// mutated, never lowers the number of violations. All fixture datasets are
// text files, so the mandatory locator is sml:columnNumber.
TEST_F(Validate, MonotoneUnderRemovalOfMandatoryTriples) {
  auto dm = fixtures::mobility_domain();
  const std::vector<Iri> mandatory{
      vocab::dcat::dataset(),        vocab::sml::has_file(),       vocab::csvw::separator(),
      vocab::sml::column_number(),   vocab::sml::maps_to_domain(), vocab::sml::maps_to_property(),
      vocab::sml::has_attribute(),   vocab::so::start_date(),      vocab::so::end_date(),
  };
  auto g = fixtures::verbatim_catalog();
  auto node = mapping_node(g, sml_("FCDDatasetAttribute1"));
  std::vector<rdf::Graph> bases{
      g,
      fixtures::mobility_catalog_graph(),
      without(g, sml_("FCDDataset"), vocab::sml::has_file()),
      with(g, {sml_("FCDDatasetAttribute1"), vocab::sml::column_name(), rdf::plain("vid")}),
      with(without(g, node, vocab::sml::maps_to_domain()), {node, vocab::sml::maps_to_domain(), sml_("Spaceship")}),
      with(without(g, node, vocab::sml::maps_to_property()), {node, vocab::sml::maps_to_property(), sml_("colour")}),
  };
  int checked = 0;
  for (const auto& base : bases) {
    std::size_t before = validate(load_catalog(base).catalog, dm).size();
    for (const auto& t : base) {
      if (std::find(mandatory.begin(), mandatory.end(), t.predicate) == mandatory.end()) continue;
      rdf::Graph mutated = base;
      mutated.erase(t);
      EXPECT_GE(validate(load_catalog(mutated).catalog, dm).size(), before)
          << "removing " << rdf::to_ntriples(t.subject) << " " << t.predicate.value;
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST_F(AttributesOf, VerbatimCatalog) {
  auto c = load_catalog(fixtures::verbatim_catalog()).catalog;
  auto rows = attributes_of(c, sml_("FCDDataset"));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], (AttributeRow{"vehicle id", 0, std::nullopt, Mapping{sml_("carId"), sml_("FloatingCarDataPoint")}}));
}

TEST_F(AttributesOf, UnknownDataset) {
  auto c = load_catalog(fixtures::verbatim_catalog()).catalog;
  try {
    attributes_of(c, sml_("Nope"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UNKNOWN_DATASET);
    EXPECT_NE(std::string(e.what()).find(sml_("Nope").value), std::string::npos);
  }
}

TEST_F(AttributesOf, UnmappedAttributeHasNoMapping) {
  auto g = fixtures::verbatim_catalog();
  g.insert({sml_("FCDDataset"), vocab::sml::has_attribute(), sml_("FCDDatasetAttribute2")});
  g.insert({sml_("FCDDatasetAttribute2"), vocab::rdf::type(), vocab::sml::attribute()});
  g.insert({sml_("FCDDatasetAttribute2"), vocab::dcterms::identifier(), rdf::plain("speed")});
  g.insert({sml_("FCDDatasetAttribute2"), vocab::sml::column_number(), rdf::typed("1", vocab::xsd::integer())});
  auto rows = attributes_of(load_catalog(g).catalog, sml_("FCDDataset"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].mapping);
  EXPECT_EQ(rows[1].identifier, "speed");
  EXPECT_FALSE(rows[1].mapping);
}

// The typed lookup and the SPARQL query over the same graph agree row for row.
TEST_F(AttributesOf, MatchesTheAttributeQuery) {
  auto g = fixtures::mobility_catalog_graph();
  auto c = load_catalog(g).catalog;
  auto q = sparql::parse_query(rdf::read_file(fixtures::kDir + "/fig6.rq"), rdf::standard_prefixes());
  for (const auto& d : c.datasets) {
    std::string text = rdf::read_file(fixtures::kDir + "/fig6.rq");
    auto pos = text.find("sml:FCDDataset");
    text.replace(pos, std::string("sml:FCDDataset").size(), "<" + d.iri.value + ">");
    auto solutions = sparql::evaluate(sparql::parse_query(text, rdf::standard_prefixes()), g);
    auto rows = attributes_of(c, d.iri);
    ASSERT_EQ(solutions.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& s = solutions[i];
      EXPECT_EQ(std::get<rdf::Literal>(s.at("attrName")).lexical, rows[i].identifier);
      EXPECT_EQ(std::get<rdf::Literal>(s.at("columnNumber")).lexical, std::to_string(*rows[i].column_number));
      ASSERT_TRUE(rows[i].mapping);
      EXPECT_EQ(std::get<Iri>(s.at("mapProperty")), rows[i].mapping->property);
      EXPECT_EQ(std::get<Iri>(s.at("mapDomain")), rows[i].mapping->domain_class);
    }
  }
  EXPECT_EQ(q.projection.size(), 4u);
}

TEST_F(DatasetsForClass, Examples) {
  auto dm = fixtures::mobility_domain();
  auto verbatim = load_catalog(fixtures::verbatim_catalog()).catalog;
  EXPECT_EQ(datasets_for_class(verbatim, sml_("FloatingCarDataPoint"), dm), std::vector{sml_("FCDDataset")});
  EXPECT_THROW(datasets_for_class(verbatim, sml_("Nope"), dm), Error);
  try {
    datasets_for_class(verbatim, sml_("Nope"), dm);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UNKNOWN_CLASS);
  }
  auto c = fixtures::mobility_catalog();
  EXPECT_EQ(datasets_for_class(c, sml_("MobilityClass"), dm),
            (std::vector{sml_("FCDDataset"), sml_("OSMDataset")}));
  EXPECT_EQ(datasets_for_class(c, sml_("StreetSegment"), dm), std::vector{sml_("OSMDataset")});
  EXPECT_TRUE(datasets_for_class(c, sml_("WeatherRecord"), dm).empty());
}

TEST_F(DatasetsForClass, SubsetOfEveryAncestor) {
  auto dm = fixtures::mobility_domain();
  auto c = fixtures::mobility_catalog();
  for (const auto& [iri, cls] : dm.classes()) {
    auto mine = datasets_for_class(c, iri, dm);
    for (const auto& [anc, _] : dm.classes()) {
      if (!dm.is_subclass_of(iri, anc)) continue;
      auto theirs = datasets_for_class(c, anc, dm);
      EXPECT_TRUE(std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end()))
          << iri.value << " under " << anc.value;
    }
  }
}

TEST_F(Suggestions, Extractions) {
  auto dm = fixtures::mobility_domain();
  auto c = fixtures::mobility_catalog();
  const auto* f = c.dataset(sml_("FCDDataset"));
  EXPECT_EQ(suggest_extractions(*f->attribute(sml_("FCDDatasetAttribute4")), dm),
            (std::vector{ExtractorKind::WEEKDAY, ExtractorKind::HOUR_OF_DAY}));
  EXPECT_TRUE(suggest_extractions(*f->attribute(sml_("FCDDatasetAttribute3")), dm).empty());
  AttributeProfile unmapped;
  EXPECT_TRUE(suggest_extractions(unmapped, dm).empty());
}

TEST_F(Suggestions, Integrations) {
  auto dm = fixtures::mobility_domain();
  auto c = fixtures::mobility_catalog();
  JoinSuggestion expected{IntegrationKind::SPATIAL_NEAREST,
                          sml_("FCDDataset"),
                          sml_("FCDDatasetAttribute5"),
                          sml_("FCDDatasetAttribute6"),
                          sml_("OSMDataset"),
                          sml_("OSMDatasetAttribute4"),
                          50.0};
  EXPECT_EQ(suggest_integrations(c, sml_("FCDDataset"), sml_("OSMDataset"), dm), std::vector{expected});
  EXPECT_EQ(suggest_integrations(c, sml_("OSMDataset"), sml_("FCDDataset"), dm), std::vector{expected});
  // Point to point is not suggested.
  EXPECT_TRUE(suggest_integrations(c, sml_("FCDDataset"), sml_("FCDDataset"), dm).empty());
  auto verbatim = load_catalog(fixtures::verbatim_catalog()).catalog;
  EXPECT_TRUE(suggest_integrations(verbatim, sml_("FCDDataset"), sml_("FCDDataset"), dm).empty());
  EXPECT_THROW(suggest_integrations(c, sml_("FCDDataset"), sml_("X"), dm), Error);
}
