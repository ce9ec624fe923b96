#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>

#include "sml/catalog/catalog.h"
#include "sml/dataspec/dataspec.h"
#include "sml/materializer/materializer.h"
#include "sml/profiler/profiler.h"
#include "sml/rdf/turtle.h"
#include "sml/rdf/vocabulary.h"
#include "sml/service/service.h"
#include "sml/sparql/query.h"

using namespace sml;
namespace fs = std::filesystem;

namespace {

// 1 for validation and type errors, 2 for I/O, syntax and usage errors.
int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::IO_NOT_FOUND:
    case ErrorCode::IO_ERROR:
    case ErrorCode::SYNTAX_ERROR:
    case ErrorCode::UNDEFINED_PREFIX:
    case ErrorCode::UNSUPPORTED_SYNTAX:
    case ErrorCode::USAGE:
    case ErrorCode::BOUND_EXCEEDED:
    case ErrorCode::MALFORMED_DOCUMENT:
    case ErrorCode::VERSION_MISMATCH:
    case ErrorCode::UNKNOWN_STEP_KIND:
    case ErrorCode::SOURCE_UNREACHABLE:
    case ErrorCode::NOT_SUPPORTED:
      return 2;
    default:
      return 1;
  }
}

int fail(ErrorCode code, const std::string& message) {
  std::cerr << "code: " << to_string(code) << "\n" << message << "\n";
  return exit_code(code);
}

void warn(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds) std::cerr << format(d) << "\n";
}

struct Inputs {
  rdf::Graph graph;
  catalog::Catalog catalog;
  catalog::DomainModel dm;
};

std::string env(const char* name) {
  const char* v = std::getenv(name);
  return v ? v : "";
}

// Domain model: the flag, then $SML_DOMAIN_MODEL, then the catalog's
// sml:domainModel file (relative to the catalog), then the catalog itself.
Inputs load_inputs(const std::string& catalog_path, const std::string& domain_flag) {
  Inputs in;
  auto parsed = rdf::read_turtle_file(catalog_path);
  warn(parsed.diagnostics);
  in.graph = std::move(parsed.graph);
  auto loaded = catalog::load_catalog(in.graph);
  in.catalog = std::move(loaded.catalog);
  std::string domain = domain_flag.empty() ? env("SML_DOMAIN_MODEL") : domain_flag;
  if (domain.empty()) {
    for (const auto& c : in.catalog.catalogs) {
      auto o = in.graph.object(c, vocab::sml::term("domainModel"));
      if (o && rdf::is_literal(*o)) {
        fs::path p = std::get<rdf::Literal>(*o).lexical;
        domain = (p.is_absolute() ? p : fs::path(catalog_path).parent_path() / p).string();
        break;
      }
    }
  }
  rdf::Graph dg = in.graph;
  if (!domain.empty()) {
    auto d = rdf::read_turtle_file(domain);
    warn(d.diagnostics);
    dg = std::move(d.graph);
  }
  auto dm = catalog::load_domain_model(dg);
  warn(dm.diagnostics);
  in.dm = std::move(dm.model);
  return in;
}

fs::path data_root(const std::string& flag, const std::string& catalog_path) {
  if (!flag.empty()) return flag;
  if (auto e = env("SML_DATA_ROOT"); !e.empty()) return e;
  return fs::path(catalog_path).parent_path();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::IO_ERROR, "cannot write " + path);
}

std::string show(const rdf::Iri& iri, const rdf::PrefixMap& prefixes) {
  return rdf::compact(iri, prefixes).value_or("<" + iri.value + ">");
}

const catalog::DatasetProfile& dataset(const Inputs& in, const std::string& ref) {
  auto prefixes = rdf::standard_prefixes();
  for (const auto& [k, v] : in.graph.prefixes()) prefixes[k] = v;
  const auto* d = in.catalog.find_dataset(ref, prefixes);
  if (!d) throw Error(ErrorCode::UNKNOWN_DATASET, "unknown dataset " + ref);
  return *d;
}

dataspec::Specification load_spec_file(const std::string& path, const Inputs& in) {
  auto loaded = dataspec::load_spec(rdf::read_file(path), in.catalog, in.dm, catalog::graph_digest(in.graph));
  for (const auto& d : loaded.diagnostics) {
    if (d.severity != Severity::ERROR) std::cerr << format(d) << "\n";
  }
  if (loaded.error) throw *loaded.error;
  return loaded.spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic data catalog, specification and materialization tool", "sml"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string catalog_path, domain_flag, root_flag, out_path, iri, file;

  auto* cat = app.add_subcommand("catalog", "Inspect a data catalog");
  cat->require_subcommand(1);
  auto add_catalog_opts = [&](CLI::App* c) {
    c->add_option("catalog", catalog_path, "Catalog Turtle file")->required();
    c->add_option("--domain-model", domain_flag, "Domain model Turtle file");
  };
  auto* validate = cat->add_subcommand("validate", "Check the catalog against the domain model");
  add_catalog_opts(validate);
  validate->callback([&] {
    action = [&] {
      auto in = load_inputs(catalog_path, domain_flag);
      auto v = catalog::validate(in.catalog, in.dm);
      for (const auto& x : v) std::cout << catalog::to_string(x.kind) << "\t" << x.subject << "\t" << x.message << "\n";
      std::cout << v.size() << (v.size() == 1 ? " violation" : " violations") << "\n";
      return v.empty() ? 0 : 1;
    };
  });
  auto* list = cat->add_subcommand("list", "List datasets");
  add_catalog_opts(list);
  list->callback([&] {
    action = [&] {
      auto in = load_inputs(catalog_path, domain_flag);
      std::cout << "dataset\tshort name\ttitle\tattributes\n";
      for (const auto& d : in.catalog.datasets) {
        std::cout << show(d.iri, in.graph.prefixes()) << "\t" << d.short_name << "\t" << d.title << "\t"
                  << d.attributes.size() << "\n";
      }
      return 0;
    };
  });
  auto* describe = cat->add_subcommand("describe", "Show the attributes of a dataset");
  add_catalog_opts(describe);
  describe->add_option("dataset", iri, "Dataset IRI, prefixed name or short name")->required();
  describe->callback([&] {
    action = [&] {
      auto in = load_inputs(catalog_path, domain_flag);
      const auto& d = dataset(in, iri);
      const auto& p = in.graph.prefixes();
      std::cout << "dataset\t" << show(d.iri, p) << "\ntitle\t" << d.title << "\n";
      if (d.temporal) {
        std::cout << "temporal\t" << (d.temporal->start ? d.temporal->start->lexical : "") << "\t"
                  << (d.temporal->end ? d.temporal->end->lexical : "") << "\n";
      }
      std::cout << "identifier\tcolumnNumber\tcolumnName\tproperty\tdomainClass\n";
      for (const auto& a : catalog::attributes_of(in.catalog, d.iri)) {
        std::cout << a.identifier << "\t" << (a.column_number ? std::to_string(*a.column_number) : "") << "\t"
                  << a.column_name.value_or("") << "\t" << (a.mapping ? show(a.mapping->property, p) : "") << "\t"
                  << (a.mapping ? show(a.mapping->domain_class, p) : "") << "\n";
      }
      return 0;
    };
  });

  auto* query = app.add_subcommand("query", "Run SPARQL queries");
  query->require_subcommand(1);
  auto* run = query->add_subcommand("run", "Evaluate a query over a catalog; prints TSV");
  run->add_option("query", file, "Query file")->required();
  run->add_option("--catalog", catalog_path, "Catalog Turtle file")->required();
  run->callback([&] {
    action = [&] {
      auto text = rdf::read_file(file);
      auto g = rdf::read_turtle_file(catalog_path);
      warn(g.diagnostics);
      auto prefixes = rdf::standard_prefixes();
      for (const auto& [k, v] : g.graph.prefixes()) prefixes[k] = v;
      auto q = sparql::parse_query(text, prefixes);
      warn(q.diagnostics);
      std::cout << sparql::to_tsv(q, sparql::evaluate(q, g.graph));
      return 0;
    };
  });

  bool merge = false;
  auto* profile = app.add_subcommand("profile", "Compute dataset statistics; prints Turtle");
  add_catalog_opts(profile);
  profile->add_option("dataset", iri, "Dataset IRI, prefixed name or short name")->required();
  profile->add_option("--data-root", root_flag, "Directory for relative file locations");
  profile->add_option("--out", out_path, "Output file (default stdout)");
  profile->add_flag("--merge", merge, "Print the whole catalog with the statistics merged in");
  profile->callback([&] {
    action = [&] {
      auto in = load_inputs(catalog_path, domain_flag);
      const auto& d = dataset(in, iri);
      auto src = source::file_sources(data_root(root_flag, catalog_path))(d);
      auto r = profiler::profile_dataset(d, *src);
      warn(r.diagnostics);
      auto stats = profiler::emit_statistics_triples(r, d.iri);
      if (merge) {
        auto merged = profiler::merge_statistics(in.graph, stats);
        write_output(out_path, rdf::serialize_turtle(merged));
      } else {
        write_output(out_path, rdf::serialize_turtle(stats));
      }
      return 0;
    };
  });

  auto* spec = app.add_subcommand("spec", "Check data specifications");
  spec->require_subcommand(1);
  auto add_spec_opts = [&](CLI::App* c) {
    c->add_option("spec", file, "Specification document")->required();
    c->add_option("--catalog", catalog_path, "Catalog Turtle file")->required();
    c->add_option("--domain-model", domain_flag, "Domain model Turtle file");
  };
  auto* check = spec->add_subcommand("check", "Type-check a specification");
  add_spec_opts(check);
  check->callback([&] {
    action = [&] {
      auto in = load_inputs(catalog_path, domain_flag);
      auto loaded = dataspec::load_spec(rdf::read_file(file), in.catalog, in.dm, catalog::graph_digest(in.graph));
      for (const auto& d : loaded.diagnostics) std::cout << format(d) << "\n";
      if (loaded.error) {
        std::cerr << "code: " << to_string(loaded.error->code()) << "\n";
        return 1;
      }
      std::cout << "ok: " << loaded.spec.steps.size() << " steps, " << loaded.state->result().columns.size()
                << " columns\n";
      return 0;
    };
  });
  auto* schema = spec->add_subcommand("schema", "Print the inferred result schema");
  add_spec_opts(schema);
  schema->callback([&] {
    action = [&] {
      auto in = load_inputs(catalog_path, domain_flag);
      auto s = load_spec_file(file, in);
      std::cout << dataspec::format_schema(dataspec::infer_schema(s, in.catalog, in.dm), in.graph.prefixes());
      return 0;
    };
  });

  std::string spec_path, separator = ",";
  auto* mat = app.add_subcommand("materialize", "Execute a specification against the data; writes CSV");
  mat->add_option("catalog", catalog_path, "Catalog Turtle file")->required();
  mat->add_option("spec", spec_path, "Specification document")->required();
  mat->add_option("--out", out_path, "Output CSV file, or - for stdout")->required();
  mat->add_option("--data-root", root_flag, "Directory for relative file locations");
  mat->add_option("--domain-model", domain_flag, "Domain model Turtle file");
  mat->add_option("--separator", separator, "Output separator")->check([](const std::string& s) {
    return s.size() == 1 ? std::string() : std::string("separator must be one character");
  });
  mat->callback([&] {
    action = [&] {
      auto in = load_inputs(catalog_path, domain_flag);
      auto s = load_spec_file(spec_path, in);
      auto t = materializer::materialize(s, in.catalog, in.dm, source::file_sources(data_root(root_flag, catalog_path)));
      warn(t.diagnostics);
      write_output(out_path, materializer::write_csv(t, separator[0]));
      return 0;
    };
  });

  std::string host = "127.0.0.1", state_dir;
  int port = 8080;
  service::Config config;
  auto* serve = app.add_subcommand("serve", "Start the HTTP service");
  serve->add_option("--catalog", catalog_path, "Catalog Turtle file")->required();
  serve->add_option("--domain-model", domain_flag, "Domain model Turtle file");
  serve->add_option("--data-root", root_flag, "Directory for relative file locations");
  serve->add_option("--state-dir", state_dir, "Directory for stored specifications");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port")->check(CLI::Range(0, 65535));
  serve->add_option("--workers", config.workers, "Concurrent materialization jobs")->check(CLI::PositiveNumber);
  serve->add_option("--cors-origin", config.cors_origin, "Access-Control-Allow-Origin value");
  serve->callback([&] {
    action = [&] {
      auto in = load_inputs(catalog_path, domain_flag);
      config.data_root = data_root(root_flag, catalog_path);
      config.state_dir = state_dir;
      service::Service svc(std::move(in.graph), std::move(in.dm), config);
      return service::serve(svc, host, port);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "code: USAGE\n";
    app.exit(e);
    return 2;
  }
  try {
    return action();
  } catch (const dataspec::SpecError& e) {
    std::string where = e.step() ? "step " + std::to_string(*e.step()) : "";
    if (!e.column().empty()) where += (where.empty() ? "column " : ", column ") + e.column();
    return fail(e.code(), where.empty() ? e.what() : where + ": " + e.what());
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  } catch (const std::exception& e) {
    return fail(ErrorCode::IO_ERROR, e.what());
  }
}
