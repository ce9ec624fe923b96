#include "sml/catalog/catalog.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>

#include "sml/rdf/vocabulary.h"

namespace sml::catalog {

namespace {

using rdf::BlankNode;
using rdf::Graph;
using rdf::Triple;

std::string local_name(const Iri& iri) {
  auto pos = iri.value.find_last_of("#/");
  return pos == std::string::npos ? iri.value : iri.value.substr(pos + 1);
}

template <typename T>
std::optional<T> parse_integer(std::string_view text) {
  T value{};
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// Graph view that records which triples the typed layer has interpreted; the
// rest becomes the residual.
class Reader {
 public:
  explicit Reader(const Graph& g) : g_(g) {}

  std::optional<Triple> first(const Term& s, const Iri& p) const {
    auto m = g_.match(s, p, std::nullopt);
    if (m.empty()) return std::nullopt;
    return m.front();
  }

  std::vector<Triple> all(const Term& s, const Iri& p) const { return g_.match(s, p, std::nullopt); }

  void consume(const Triple& t) { consumed_.insert(t); }
  bool consumed(const Triple& t) const { return consumed_.contains(t); }

  template <typename Parse>
  auto take(const Term& s, const Iri& p, Parse parse) -> decltype(parse(std::declval<const Term&>())) {
    auto t = first(s, p);
    if (!t) return std::nullopt;
    auto value = parse(t->object);
    if (value) consume(*t);
    return value;
  }

  std::optional<Literal> take_literal(const Term& s, const Iri& p) {
    return take(s, p, [](const Term& o) -> std::optional<Literal> {
      if (const auto* l = std::get_if<Literal>(&o)) return *l;
      return std::nullopt;
    });
  }

  std::optional<std::string> take_text(const Term& s, const Iri& p) {
    auto l = take_literal(s, p);
    if (!l) return std::nullopt;
    return l->lexical;
  }

  std::optional<Iri> take_iri(const Term& s, const Iri& p) {
    return take(s, p, [](const Term& o) -> std::optional<Iri> {
      if (const auto* i = std::get_if<Iri>(&o)) return *i;
      return std::nullopt;
    });
  }

  std::optional<Term> take_node(const Term& s, const Iri& p) {
    return take(s, p, [](const Term& o) -> std::optional<Term> {
      if (rdf::is_literal(o)) return std::nullopt;
      return o;
    });
  }

  std::optional<std::uint64_t> take_count(const Term& s, const Iri& p) {
    return take(s, p, [](const Term& o) -> std::optional<std::uint64_t> {
      const auto* l = std::get_if<Literal>(&o);
      if (!l) return std::nullopt;
      return parse_integer<std::uint64_t>(l->lexical);
    });
  }

  bool take_type(const Term& s, const Iri& type) {
    Triple t{s, vocab::rdf::type(), type};
    if (!g_.contains(t)) return false;
    consume(t);
    return true;
  }

  // Every not yet consumed (predicate, object) of `s`, consumed now.
  PassThrough rest(const Term& s) {
    PassThrough out;
    for (const auto& t : g_.match(s, std::nullopt, std::nullopt)) {
      if (consumed(t)) continue;
      consume(t);
      out.emplace_back(t.predicate, t.object);
    }
    return out;
  }

  Graph residual() const {
    Graph out(g_.prefixes());
    for (const auto& t : g_) {
      if (!consumed(t)) out.insert(t);
    }
    return out;
  }

 private:
  const Graph& g_;
  std::set<Triple> consumed_;
};

class CatalogLoader {
 public:
  explicit CatalogLoader(const Graph& g) : in_(g), g_(g) {}

  CatalogLoad run() {
    for (const auto& s : g_.subjects(vocab::rdf::type(), vocab::dcat::catalog())) {
      if (const auto* iri = std::get_if<Iri>(&s)) {
        in_.take_type(s, vocab::dcat::catalog());
        out_.catalog.catalogs.push_back(*iri);
      }
    }
    if (out_.catalog.catalogs.empty()) warn(Severity::ERROR, "no dcat:Catalog found", "");

    std::map<Iri, Iri> owner;
    for (const auto& cat : out_.catalog.catalogs) {
      auto links = in_.all(cat, vocab::dcat::dataset());
      if (links.empty()) warn(Severity::ERROR, "catalog has no dcat:dataset", cat.value);
      for (const auto& t : links) {
        const auto* d = std::get_if<Iri>(&t.object);
        if (!d) {
          warn(Severity::ERROR, "dcat:dataset must link to an IRI", cat.value);
          continue;
        }
        if (owner.contains(*d)) {
          warn(Severity::WARNING, "dataset listed by several catalogs; the first is kept", d->value);
          continue;
        }
        in_.consume(t);
        owner.emplace(*d, cat);
      }
    }
    std::set<Iri> datasets;
    for (const auto& [d, cat] : owner) datasets.insert(d);
    for (const auto& s : g_.subjects(vocab::rdf::type(), vocab::dcat::dataset_class())) {
      if (const auto* iri = std::get_if<Iri>(&s)) {
        if (!owner.contains(*iri)) warn(Severity::WARNING, "dataset is not listed by any catalog", iri->value);
        datasets.insert(*iri);
      }
    }
    for (const auto& d : datasets) {
      auto it = owner.find(d);
      out_.catalog.datasets.push_back(
          dataset(d, it == owner.end() ? std::nullopt : std::optional<Iri>(it->second)));
    }
    out_.catalog.residual = in_.residual();
    return std::move(out_);
  }

 private:
  void warn(Severity s, std::string message, std::string subject) {
    out_.diagnostics.push_back({s, std::move(message), std::move(subject)});
  }

  DatasetProfile dataset(const Iri& iri, std::optional<Iri> cat) {
    DatasetProfile d;
    d.iri = iri;
    d.catalog = std::move(cat);
    in_.take_type(iri, vocab::dcat::dataset_class());
    if (auto title = in_.take_text(iri, vocab::dcterms::title())) {
      d.title = *title;
    } else {
      warn(Severity::WARNING, "dataset has no dcterms:title", iri.value);
    }
    if (auto id = in_.take_text(iri, vocab::dcterms::identifier())) {
      d.short_name = *id;
      d.short_name_declared = true;
    } else {
      d.short_name = local_name(iri);
    }
    if (auto node = in_.take_node(iri, vocab::dcterms::temporal())) {
      TemporalCoverage tc{*node, in_.take_literal(*node, vocab::so::start_date()),
                          in_.take_literal(*node, vocab::so::end_date())};
      if (!tc.start || !tc.end) warn(Severity::ERROR, "temporal coverage lacks a bound", iri.value);
      d.temporal = std::move(tc);
    }
    if (auto node = in_.take_node(iri, vocab::sml::has_file())) {
      d.access = access(*node, AccessKind::TEXT_FILE);
    } else if (auto db = in_.take_node(iri, vocab::sml::has_database())) {
      d.access = access(*db, AccessKind::DATABASE);
    } else {
      warn(Severity::ERROR, "dataset has no access descriptor", iri.value);
    }
    for (const auto& t : in_.all(iri, vocab::sml::has_attribute())) {
      const auto* a = std::get_if<Iri>(&t.object);
      if (!a) {
        warn(Severity::ERROR, "sml:hasAttribute must link to an IRI", iri.value);
        continue;
      }
      in_.consume(t);
      d.attributes.push_back(attribute(*a));
    }
    if (d.attributes.empty()) warn(Severity::ERROR, "dataset has no attributes", iri.value);
    std::sort(d.attributes.begin(), d.attributes.end(), [](const auto& a, const auto& b) {
      auto key = [](const AttributeProfile& x) {
        return std::tuple(!x.column_number.has_value(), x.column_number.value_or(0), x.identifier,
                          x.iri);
      };
      return key(a) < key(b);
    });
    if (auto n = in_.take_count(iri, vocab::sml::number_of_instances())) {
      d.statistics = DatasetStatistics{*n};
    }
    d.extra = in_.rest(iri);
    return d;
  }

  AccessDescriptor access(const Term& node, AccessKind kind) {
    AccessDescriptor a;
    a.node = node;
    a.kind = kind;
    if (kind == AccessKind::TEXT_FILE) {
      in_.take_type(node, vocab::sml::text_file());
      a.file_location = in_.take_text(node, vocab::sml::file_location());
      a.format = in_.take_text(node, vocab::dcterms::format());
      a.separator = in_.take_text(node, vocab::csvw::separator());
      a.has_header = in_.take(node, vocab::sml::has_header(), [](const Term& o) -> std::optional<bool> {
        const auto* l = std::get_if<Literal>(&o);
        if (!l) return std::nullopt;
        if (l->lexical == "true" || l->lexical == "1") return true;
        if (l->lexical == "false" || l->lexical == "0") return false;
        return std::nullopt;
      });
    } else {
      in_.take_type(node, vocab::sml::database());
      a.connection = in_.take_text(node, vocab::sml::connection());
      a.table = in_.take_text(node, vocab::sml::table());
    }
    a.extra = in_.rest(node);
    return a;
  }

  AttributeProfile attribute(const Iri& iri) {
    AttributeProfile a;
    a.iri = iri;
    in_.take_type(iri, vocab::sml::attribute());
    a.label = in_.take_literal(iri, vocab::rdfs::label());
    if (auto id = in_.take_text(iri, vocab::dcterms::identifier())) {
      a.identifier = *id;
      a.identifier_declared = true;
    } else {
      a.identifier = a.label ? a.label->lexical : local_name(iri);
    }
    a.column_number = in_.take(iri, vocab::sml::column_number(),
                               [](const Term& o) -> std::optional<std::int64_t> {
                                 const auto* l = std::get_if<Literal>(&o);
                                 if (!l) return std::nullopt;
                                 auto n = parse_integer<std::int64_t>(l->lexical);
                                 if (n && *n < 0) return std::nullopt;
                                 return n;
                               });
    a.column_name = in_.take_text(iri, vocab::sml::column_name());
    if (!a.column_number && !a.column_name) {
      warn(Severity::ERROR, "attribute has no column locator", iri.value);
    }
    if (auto node = in_.take_node(iri, vocab::sml::has_mapping())) {
      a.mapping_node = *node;
      a.mapped_property = in_.take_iri(*node, vocab::sml::maps_to_property());
      a.mapped_class = in_.take_iri(*node, vocab::sml::maps_to_domain());
      if (!a.mapping()) warn(Severity::ERROR, "mapping lacks a property or a domain class", iri.value);
    }
    auto& st = a.statistics;
    st.count = in_.take_count(iri, vocab::sml::number_of_instances());
    st.null_count = in_.take_count(iri, vocab::sml::number_of_null_values());
    st.distinct_count = in_.take_count(iri, vocab::sml::number_of_distinct_values());
    st.mean = in_.take_literal(iri, vocab::sml::mean_value());
    st.min = in_.take_literal(iri, vocab::sml::min_value());
    st.max = in_.take_literal(iri, vocab::sml::max_value());
    a.extra = in_.rest(iri);
    return a;
  }

  Reader in_;
  const Graph& g_;
  CatalogLoad out_;
};

Literal count_literal(std::uint64_t n) { return rdf::typed(std::to_string(n), vocab::xsd::integer()); }

void emit_extra(Graph& g, const Term& s, const PassThrough& extra) {
  for (const auto& [p, o] : extra) g.insert({s, p, o});
}

}  // namespace

std::optional<Mapping> AttributeProfile::mapping() const {
  if (!mapped_property || !mapped_class) return std::nullopt;
  return Mapping{*mapped_property, *mapped_class};
}

const AttributeProfile* DatasetProfile::attribute(const Iri& a) const {
  for (const auto& x : attributes) {
    if (x.iri == a) return &x;
  }
  return nullptr;
}

const DatasetProfile* Catalog::dataset(const Iri& iri) const {
  auto it = std::lower_bound(datasets.begin(), datasets.end(), iri,
                             [](const DatasetProfile& d, const Iri& i) { return d.iri < i; });
  return it != datasets.end() && it->iri == iri ? &*it : nullptr;
}

const DatasetProfile* Catalog::find_dataset(std::string_view ref, const rdf::PrefixMap& prefixes) const {
  if (auto iri = rdf::expand(ref, prefixes)) {
    if (const auto* d = dataset(*iri)) return d;
  }
  for (const auto& d : datasets) {
    if (d.short_name == ref) return &d;
  }
  return nullptr;
}

CatalogLoad load_catalog(const Graph& g) { return CatalogLoader(g).run(); }

Graph emit_catalog(const Catalog& c) {
  Graph g = c.residual;
  const Iri type = vocab::rdf::type();
  for (const auto& cat : c.catalogs) g.insert({cat, type, vocab::dcat::catalog()});
  for (const auto& d : c.datasets) {
    if (d.catalog) g.insert({*d.catalog, vocab::dcat::dataset(), d.iri});
    g.insert({d.iri, type, vocab::dcat::dataset_class()});
    if (!d.title.empty()) g.insert({d.iri, vocab::dcterms::title(), rdf::plain(d.title)});
    if (d.short_name_declared) g.insert({d.iri, vocab::dcterms::identifier(), rdf::plain(d.short_name)});
    if (d.temporal) {
      g.insert({d.iri, vocab::dcterms::temporal(), d.temporal->node});
      if (d.temporal->start) g.insert({d.temporal->node, vocab::so::start_date(), *d.temporal->start});
      if (d.temporal->end) g.insert({d.temporal->node, vocab::so::end_date(), *d.temporal->end});
    }
    if (d.access) {
      const auto& a = *d.access;
      auto text = [&](const Iri& p, const std::optional<std::string>& v) {
        if (v) g.insert({a.node, p, rdf::plain(*v)});
      };
      if (a.kind == AccessKind::TEXT_FILE) {
        g.insert({d.iri, vocab::sml::has_file(), a.node});
        g.insert({a.node, type, vocab::sml::text_file()});
        text(vocab::sml::file_location(), a.file_location);
        text(vocab::dcterms::format(), a.format);
        text(vocab::csvw::separator(), a.separator);
        if (a.has_header) {
          g.insert({a.node, vocab::sml::has_header(),
                    rdf::typed(*a.has_header ? "true" : "false", vocab::xsd::boolean())});
        }
      } else {
        g.insert({d.iri, vocab::sml::has_database(), a.node});
        g.insert({a.node, type, vocab::sml::database()});
        text(vocab::sml::connection(), a.connection);
        text(vocab::sml::table(), a.table);
      }
      emit_extra(g, a.node, a.extra);
    }
    for (const auto& a : d.attributes) {
      g.insert({d.iri, vocab::sml::has_attribute(), a.iri});
      g.insert({a.iri, type, vocab::sml::attribute()});
      if (a.label) g.insert({a.iri, vocab::rdfs::label(), *a.label});
      if (a.identifier_declared) g.insert({a.iri, vocab::dcterms::identifier(), rdf::plain(a.identifier)});
      if (a.column_number) {
        g.insert({a.iri, vocab::sml::column_number(), count_literal(static_cast<std::uint64_t>(*a.column_number))});
      }
      if (a.column_name) g.insert({a.iri, vocab::sml::column_name(), rdf::plain(*a.column_name)});
      if (a.mapping_node) {
        g.insert({a.iri, vocab::sml::has_mapping(), *a.mapping_node});
        if (a.mapped_property) g.insert({*a.mapping_node, vocab::sml::maps_to_property(), *a.mapped_property});
        if (a.mapped_class) g.insert({*a.mapping_node, vocab::sml::maps_to_domain(), *a.mapped_class});
      }
      const auto& st = a.statistics;
      if (st.count) g.insert({a.iri, vocab::sml::number_of_instances(), count_literal(*st.count)});
      if (st.null_count) g.insert({a.iri, vocab::sml::number_of_null_values(), count_literal(*st.null_count)});
      if (st.distinct_count) {
        g.insert({a.iri, vocab::sml::number_of_distinct_values(), count_literal(*st.distinct_count)});
      }
      if (st.mean) g.insert({a.iri, vocab::sml::mean_value(), *st.mean});
      if (st.min) g.insert({a.iri, vocab::sml::min_value(), *st.min});
      if (st.max) g.insert({a.iri, vocab::sml::max_value(), *st.max});
      emit_extra(g, a.iri, a.extra);
    }
    if (d.statistics) {
      g.insert({d.iri, vocab::sml::number_of_instances(), count_literal(d.statistics->number_of_instances)});
    }
    emit_extra(g, d.iri, d.extra);
  }
  return g;
}

std::string graph_digest(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::string_view s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& t : g) {
    feed(rdf::to_ntriples(t.subject));
    feed(" ");
    feed(rdf::to_ntriples(t.predicate));
    feed(" ");
    feed(rdf::to_ntriples(t.object));
    feed(" .\n");
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

}  // namespace sml::catalog
