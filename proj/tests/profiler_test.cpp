#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "sml/profiler/profiler.h"
#include "sml/rdf/vocabulary.h"
#include "support/fixtures.h"

using namespace sml;
using namespace sml::profiler;
using source::Row;
using source::VectorSource;

namespace {

Iri sml_(std::string_view local) { return vocab::sml::term(local); }

catalog::DatasetProfile one_column_dataset() {
  catalog::DatasetProfile d;
  d.iri = sml_("D");
  catalog::AttributeProfile a;
  a.iri = sml_("A");
  a.identifier = "a";
  a.column_number = 0;
  d.attributes.push_back(a);
  return d;
}

std::vector<Row> column(std::initializer_list<const char*> cells) {
  std::vector<Row> rows;
  for (const char* c : cells) rows.push_back({c});
  return rows;
}

ColumnStatistics profile_column(std::vector<Row> rows) {
  VectorSource src(std::move(rows));
  return profile_dataset(one_column_dataset(), src).attributes.at(0).stats;
}

std::vector<Row> read_all(const std::string& text, char sep) {
  std::istringstream in(text);
  source::CsvReader r(in, sep);
  std::vector<Row> out;
  while (auto row = r.next()) out.push_back(*row);
  return out;
}

}  // namespace

TEST(Profile, SpeedColumn) {
  auto s = profile_column(column({"74", "84", "17"}));
  EXPECT_EQ(s.count, 3u);
  EXPECT_EQ(s.null_count, 0u);
  EXPECT_EQ(s.distinct_count, 3u);
  ASSERT_TRUE(s.numeric);
  EXPECT_NEAR(*s.mean, (74.0 + 84.0 + 17.0) / 3.0, 1e-9);
  EXPECT_EQ(*s.min_number, 17.0);
  EXPECT_EQ(*s.max_number, 84.0);
}

TEST(Profile, SingleValue) {
  auto s = profile_column(column({"5"}));
  EXPECT_EQ(*s.mean, 5.0);
  EXPECT_EQ(*s.min_number, 5.0);
  EXPECT_EQ(*s.max_number, 5.0);
  EXPECT_EQ(s.distinct_count, 1u);
}

TEST(Profile, AllNullColumn) {
  auto s = profile_column(column({"", "none", "NONE", "None"}));
  EXPECT_EQ(s.count, 4u);
  EXPECT_EQ(s.null_count, s.count);
  EXPECT_FALSE(s.mean);
  EXPECT_FALSE(s.min_number);
  EXPECT_FALSE(s.min_text);
  EXPECT_EQ(s.distinct_count, 0u);
}

TEST(Profile, TextColumnUsesLexicographicBounds) {
  auto s = profile_column(column({"motorway", "12", "secondary", "", "motorway"}));
  EXPECT_FALSE(s.numeric);
  EXPECT_FALSE(s.mean);
  EXPECT_EQ(s.min_text, "12");
  EXPECT_EQ(s.max_text, "secondary");
  EXPECT_EQ(s.distinct_count, 3u);
  EXPECT_EQ(s.null_count, 1u);
}

TEST(Profile, NumberSyntax) {
  EXPECT_EQ(parse_number("-1.5e2"), -150.0);
  EXPECT_EQ(parse_number("+3"), 3.0);
  EXPECT_FALSE(parse_number("inf"));
  EXPECT_FALSE(parse_number("nan"));
  EXPECT_FALSE(parse_number("1,5"));
  EXPECT_FALSE(parse_number("."));
  EXPECT_FALSE(parse_number("1e999"));
}

TEST(Profile, StreamingMeanMatchesTwoPass) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1000.0, 1000.0);
  std::vector<double> xs(100000);
  std::vector<Row> rows;
  for (auto& x : xs) {
    x = dist(rng);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    rows.push_back({buf});
    x = *parse_number(buf);
  }
  long double sum = 0;
  for (double x : xs) sum += x;
  long double mean = sum / xs.size();
  long double correction = 0;
  for (double x : xs) correction += x - mean;
  mean += correction / xs.size();
  auto s = profile_column(std::move(rows));
  EXPECT_NEAR(*s.mean, static_cast<double>(mean), 1e-9);
  EXPECT_LE(*s.min_number, *s.mean);
  EXPECT_LE(*s.mean, *s.max_number);
}

TEST(Profile, MalformedRowsAreSkippedAndCounted) {
  VectorSource src({{"1", "a"}, {"2"}, {"3", "b"}, {"4", "c", "x"}});
  auto d = one_column_dataset();
  auto r = profile_dataset(d, src);
  EXPECT_EQ(r.rows_read, 4u);
  EXPECT_EQ(r.rows_skipped, 2u);
  EXPECT_EQ(r.dataset.number_of_instances, r.rows_read - r.rows_skipped);
  EXPECT_EQ(r.attributes[0].stats.count, 2u);
  ASSERT_EQ(r.diagnostics.size(), 2u);
  EXPECT_EQ(r.diagnostics[0].subject, "row 2");
  EXPECT_EQ(r.diagnostics[1].subject, "row 4");
}

TEST(Profile, DistinctCap) {
  VectorSource src(column({"a", "b", "c", "d"}));
  auto r = profile_dataset(one_column_dataset(), src, 2);
  EXPECT_EQ(r.attributes[0].stats.distinct_count, 2u);
  ASSERT_EQ(r.diagnostics.size(), 1u);
}

TEST(Profile, FixtureFile) {
  auto c = fixtures::mobility_catalog();
  const auto* f = c.dataset(sml_("FCDDataset"));
  auto src = source::file_sources(fixtures::kDir)(*f);
  auto before = source::physical_reads();
  auto r = profile_dataset(*f, *src);
  EXPECT_EQ(source::physical_reads() - before, 3u);
  EXPECT_EQ(r.dataset.number_of_instances, 3u);
  ASSERT_EQ(r.attributes.size(), 6u);
  const auto& speed = r.attributes[2].stats;
  EXPECT_NEAR(*speed.mean, 58.333333333333336, 1e-9);
  EXPECT_EQ(*speed.min_number, 17.0);
  EXPECT_EQ(*speed.max_number, 84.0);
  EXPECT_FALSE(r.attributes[3].stats.numeric);  // timestamps
}

TEST(Emit, MeanHasNineDecimals) {
  VectorSource src(column({"74", "84", "17"}));
  auto r = profile_dataset(one_column_dataset(), src);
  auto g = emit_statistics_triples(r, sml_("D"));
  EXPECT_EQ(g.object(sml_("A"), vocab::sml::mean_value()),
            rdf::Term(rdf::typed("58.333333333", vocab::xsd::decimal())));
  EXPECT_EQ(g.object(sml_("A"), vocab::sml::min_value()), rdf::Term(rdf::typed("17", vocab::xsd::decimal())));
  EXPECT_EQ(g.object(sml_("A"), vocab::sml::max_value()), rdf::Term(rdf::typed("84", vocab::xsd::decimal())));
  EXPECT_EQ(g.object(sml_("D"), vocab::sml::number_of_instances()),
            rdf::Term(rdf::typed("3", vocab::xsd::integer())));
}

TEST(Emit, ZeroRows) {
  VectorSource src({});
  auto g = emit_statistics_triples(profile_dataset(one_column_dataset(), src), sml_("D"));
  EXPECT_EQ(g.object(sml_("D"), vocab::sml::number_of_instances()),
            rdf::Term(rdf::typed("0", vocab::xsd::integer())));
  EXPECT_FALSE(g.object(sml_("A"), vocab::sml::mean_value()));
}

TEST(Emit, TextColumnHasNoMean) {
  VectorSource src(column({"x", "y"}));
  auto g = emit_statistics_triples(profile_dataset(one_column_dataset(), src), sml_("D"));
  EXPECT_FALSE(g.object(sml_("A"), vocab::sml::mean_value()));
  EXPECT_EQ(g.object(sml_("A"), vocab::sml::min_value()), rdf::Term(rdf::plain("x")));
}

TEST(Emit, MergeAndReloadPreservesEveryStatistic) {
  auto g = fixtures::mobility_catalog_graph();
  auto c = catalog::load_catalog(g).catalog;
  for (const auto& d : c.datasets) {
    auto src = source::file_sources(fixtures::kDir)(d);
    auto r = profile_dataset(d, *src);
    auto stats = emit_statistics_triples(r, d.iri);
    // Profiling twice and merging twice leaves one value per statistic.
    g = merge_statistics(merge_statistics(g, stats), stats);
    auto reloaded = catalog::load_catalog(g).catalog;
    const auto* rd = reloaded.dataset(d.iri);
    EXPECT_EQ(rd->statistics->number_of_instances, r.dataset.number_of_instances);
    for (const auto& a : r.attributes) {
      const auto& st = rd->attribute(a.attribute)->statistics;
      EXPECT_EQ(st.count, a.stats.count);
      EXPECT_EQ(st.null_count, a.stats.null_count);
      EXPECT_EQ(st.distinct_count, a.stats.distinct_count);
      auto lit = [&](const Iri& p) { return std::get<rdf::Literal>(*stats.object(a.attribute, p)); };
      if (a.stats.mean) {
        EXPECT_EQ(st.mean, lit(vocab::sml::mean_value()));
      }
      if (a.stats.min_number || a.stats.min_text) {
        EXPECT_EQ(st.min, lit(vocab::sml::min_value()));
      }
      if (a.stats.max_number || a.stats.max_text) {
        EXPECT_EQ(st.max, lit(vocab::sml::max_value()));
      }
    }
    // Statistics are all interpreted; nothing new reaches the residual graph.
    EXPECT_EQ(catalog::load_catalog(g).catalog.residual, c.residual);
  }
  auto reloaded = catalog::load_catalog(g).catalog;
  const auto* o = reloaded.dataset(sml_("OSMDataset"));
  EXPECT_EQ(o->attribute(sml_("OSMDatasetAttribute3"))->statistics.null_count, 1u);
}

TEST(Csv, QuotingAndLineBreaks) {
  auto rows = read_all("a;\"b;c\";\"say \"\"hi\"\"\"\r\n\n\"multi\nline\";x;\n", ';');
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (Row{"a", "b;c", "say \"hi\""}));
  EXPECT_EQ(rows[1], (Row{"multi\nline", "x", ""}));
  EXPECT_TRUE(read_all("", ',').empty());
  EXPECT_EQ(read_all("\"\"\n", ','), std::vector<Row>{Row{""}});
  EXPECT_EQ(read_all("x,y", ','), std::vector<Row>{(Row{"x", "y"})});
}

TEST(Csv, FieldQuotingRoundTrips) {
  EXPECT_EQ(source::csv_field("plain", ','), "plain");
  EXPECT_EQ(source::csv_field("a,b", ','), "\"a,b\"");
  EXPECT_EQ(source::csv_field("a,b", ';'), "a,b");
  EXPECT_EQ(source::csv_field("q\"", ','), "\"q\"\"\"");
  std::string line;
  Row cells{"a,b", "q\"", "n\nl", "", "z"};
  for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + source::csv_field(cells[i], ',');
  EXPECT_EQ(read_all(line + "\n", ','), std::vector<Row>{cells});
}

TEST(Sources, Errors) {
  auto c = fixtures::mobility_catalog();
  auto d = *c.dataset(sml_("FCDDataset"));
  try {
    source::file_sources("/nonexistent")(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SOURCE_UNREACHABLE);
  }
  d.access->file_location.reset();
  EXPECT_THROW(source::file_sources(fixtures::kDir)(d), Error);
  d.access->kind = catalog::AccessKind::DATABASE;
  try {
    source::file_sources(fixtures::kDir)(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NOT_SUPPORTED);
  }
}

TEST(Sources, HeaderIsReadButNotReturned) {
  auto c = fixtures::mobility_catalog();
  auto src = source::file_sources(fixtures::kDir)(*c.dataset(sml_("OSMDataset")));
  ASSERT_TRUE(src->header());
  EXPECT_EQ(src->header()->at(3), "geometry");
  auto first = src->next();
  EXPECT_EQ(first->at(1), "motorway_link");
  EXPECT_EQ(src->rows_read(), 1u);
}
