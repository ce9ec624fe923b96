#pragma once

#include <string>

#include <fstream>
#include <sstream>

#include "sml/catalog/catalog.h"
#include "sml/dataspec/dataspec.h"
#include "sml/rdf/turtle.h"

namespace sml::fixtures {

inline const std::string kDir = SML_FIXTURE_DIR;

inline rdf::Graph graph(const std::string& name) { return rdf::read_turtle_file(kDir + "/" + name).graph; }

inline rdf::Graph verbatim_catalog() { return graph("fig5-verbatim.ttl"); }
inline rdf::Graph mobility_catalog_graph() { return graph("mobility-catalog.ttl"); }

inline catalog::DomainModel mobility_domain() {
  return catalog::load_domain_model(graph("mobility-domain.ttl")).model;
}

inline catalog::Catalog mobility_catalog() {
  return catalog::load_catalog(mobility_catalog_graph()).catalog;
}

inline std::string text(const std::string& name) {
  std::ifstream in(kDir + "/" + name, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string worked_example_document() { return text("worked-example-spec.json"); }
inline dataspec::Specification worked_example_spec() { return dataspec::parse_spec(worked_example_document()); }

inline rdf::Iri sml_iri(std::string_view local) { return rdf::Iri{"https://simple-ml.de/ns#" + std::string(local)}; }

}  // namespace sml::fixtures
