#include "sml/profiler/profiler.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_set>

#include "sml/rdf/vocabulary.h"

namespace sml::profiler {

namespace {

struct ColumnState {
  ColumnStatistics stats;
  RunningMean mean;
  bool all_numeric = true;
  std::unordered_set<std::string> distinct;
  bool capped = false;
  std::optional<std::string> min_text, max_text;
  std::optional<double> min_number, max_number;

  void add(const std::string& cell, std::uint64_t cap) {
    ++stats.count;
    if (is_null_cell(cell)) {
      ++stats.null_count;
      return;
    }
    if (!capped) {
      distinct.insert(cell);
      if (distinct.size() > cap) capped = true;
    }
    if (!min_text || cell < *min_text) min_text = cell;
    if (!max_text || cell > *max_text) max_text = cell;
    if (!all_numeric) return;
    auto x = parse_number(cell);
    if (!x) {
      all_numeric = false;
      return;
    }
    mean.add(*x);
    if (!min_number || *x < *min_number) min_number = x;
    if (!max_number || *x > *max_number) max_number = x;
  }

  ColumnStatistics finish(std::uint64_t cap) {
    stats.distinct_count = capped ? cap : distinct.size();
    bool any = stats.count > stats.null_count;
    stats.numeric = any && all_numeric;
    if (stats.numeric) {
      stats.mean = mean.mean();
      stats.min_number = min_number;
      stats.max_number = max_number;
    } else if (any) {
      stats.min_text = min_text;
      stats.max_text = max_text;
    }
    return stats;
  }
};

rdf::Literal integer(std::uint64_t n) { return rdf::typed(std::to_string(n), vocab::xsd::integer()); }

rdf::Literal decimal(double x) { return rdf::typed(decimal_text(x), vocab::xsd::decimal()); }

const std::vector<Iri>& statistic_predicates() {
  static const std::vector<Iri> preds{
      vocab::sml::number_of_instances(), vocab::sml::number_of_null_values(),
      vocab::sml::number_of_distinct_values(), vocab::sml::mean_value(), vocab::sml::min_value(),
      vocab::sml::max_value()};
  return preds;
}

}  // namespace

bool is_null_cell(std::string_view cell) {
  if (cell.empty()) return true;
  if (cell.size() != 4) return false;
  std::string lower;
  for (char c : cell) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower == "none";
}

std::optional<double> parse_number(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  bool digit = false;
  for (char c : cell) {
    if (std::isdigit(static_cast<unsigned char>(c))) digit = true;
    else if (c != '+' && c != '-' && c != '.' && c != 'e' && c != 'E') return std::nullopt;
  }
  if (!digit) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double x = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(x)) return std::nullopt;
  return x;
}

std::string decimal_text(double x) {
  char buf[400];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
  if (ec != std::errc()) return "0";
  std::string s(buf, ptr);
  return s == "-0" ? "0" : s;
}

ProfileResult profile_dataset(const catalog::DatasetProfile& d, source::RowSource& rows,
                              std::uint64_t distinct_cap) {
  ProfileResult out;
  std::vector<ColumnState> states;
  for (const auto& a : d.attributes) {
    if (!a.column_number) {
      out.diagnostics.push_back({Severity::WARNING, "attribute has no column number; not profiled", a.iri.value});
      continue;
    }
    out.attributes.push_back({a.iri, *a.column_number, {}});
  }
  states.resize(out.attributes.size());

  std::optional<std::size_t> width;
  if (rows.header()) width = rows.header()->size();
  std::uint64_t row_number = 0;
  while (auto row = rows.next()) {
    ++row_number;
    if (!width) width = row->size();
    if (row->size() != *width) {
      ++out.rows_skipped;
      out.diagnostics.push_back({Severity::WARNING,
                                 "row has " + std::to_string(row->size()) + " cells, expected " +
                                     std::to_string(*width) + "; skipped",
                                 "row " + std::to_string(row_number)});
      continue;
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
      auto col = static_cast<std::size_t>(out.attributes[i].column);
      states[i].add(col < row->size() ? (*row)[col] : std::string(), distinct_cap);
    }
  }
  out.rows_read = rows.rows_read();
  out.dataset.number_of_instances = out.rows_read - out.rows_skipped;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto& a = out.attributes[i];
    if (width && static_cast<std::size_t>(a.column) >= *width) {
      out.diagnostics.push_back({Severity::WARNING,
                                 "column " + std::to_string(a.column) + " is beyond the row width",
                                 a.attribute.value});
    }
    if (states[i].capped) {
      out.diagnostics.push_back({Severity::WARNING,
                                 "more than " + std::to_string(distinct_cap) + " distinct values; count capped",
                                 a.attribute.value});
    }
    a.stats = states[i].finish(distinct_cap);
  }
  return out;
}

rdf::Graph emit_statistics_triples(const ProfileResult& r, const Iri& dataset) {
  rdf::Graph g(rdf::standard_prefixes());
  g.insert({dataset, vocab::sml::number_of_instances(), integer(r.dataset.number_of_instances)});
  for (const auto& a : r.attributes) {
    const auto& s = a.stats;
    g.insert({a.attribute, vocab::sml::number_of_instances(), integer(s.count)});
    g.insert({a.attribute, vocab::sml::number_of_null_values(), integer(s.null_count)});
    g.insert({a.attribute, vocab::sml::number_of_distinct_values(), integer(s.distinct_count)});
    if (s.mean) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.9f", *s.mean);
      std::string text = buf;
      if (text.starts_with("-") && text.find_first_not_of("-0.") == std::string::npos) text.erase(0, 1);
      g.insert({a.attribute, vocab::sml::mean_value(), rdf::typed(text, vocab::xsd::decimal())});
    }
    if (s.min_number) g.insert({a.attribute, vocab::sml::min_value(), decimal(*s.min_number)});
    if (s.max_number) g.insert({a.attribute, vocab::sml::max_value(), decimal(*s.max_number)});
    if (s.min_text) g.insert({a.attribute, vocab::sml::min_value(), rdf::plain(*s.min_text)});
    if (s.max_text) g.insert({a.attribute, vocab::sml::max_value(), rdf::plain(*s.max_text)});
  }
  return g;
}

rdf::Graph merge_statistics(const rdf::Graph& catalog, const rdf::Graph& statistics) {
  rdf::Graph out = catalog;
  std::set<rdf::Term> subjects;
  for (const auto& t : statistics) subjects.insert(t.subject);
  for (const auto& s : subjects) {
    for (const auto& p : statistic_predicates()) {
      for (const auto& t : out.match(s, p, std::nullopt)) out.erase(t);
    }
  }
  for (const auto& t : statistics) out.insert(t);
  return out;
}

}  // namespace sml::profiler
