#pragma once

#include <string>
#include <string_view>

#include "sml/rdf/term.h"

// Namespaces and terms used by catalogs and domain models.
namespace sml::vocab {

using Iri = ::sml::rdf::Iri;

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kDcat = "http://www.w3.org/ns/dcat#";
inline constexpr std::string_view kDcterms = "http://purl.org/dc/terms/";
inline constexpr std::string_view kCsvw = "http://www.w3.org/ns/csvw#";
inline constexpr std::string_view kSo = "http://schema.org/";
inline constexpr std::string_view kSioc = "http://rdfs.org/sioc/ns#";
// Placeholder: the published Simple-ML vocabulary IRI is not fixed here.
inline constexpr std::string_view kSml = "https://simple-ml.de/ns#";

inline Iri iri(std::string_view ns, std::string_view local) {
  return Iri{std::string(ns) + std::string(local)};
}

namespace rdf {
inline Iri type() { return iri(kRdf, "type"); }
inline Iri lang_string() { return iri(kRdf, "langString"); }
inline Iri property() { return iri(kRdf, "Property"); }
}  // namespace rdf

namespace rdfs {
inline Iri label() { return iri(kRdfs, "label"); }
inline Iri sub_class_of() { return iri(kRdfs, "subClassOf"); }
inline Iri domain() { return iri(kRdfs, "domain"); }
inline Iri range() { return iri(kRdfs, "range"); }
inline Iri klass() { return iri(kRdfs, "Class"); }
}  // namespace rdfs

namespace xsd {
inline Iri string() { return iri(kXsd, "string"); }
inline Iri integer() { return iri(kXsd, "integer"); }
inline Iri decimal() { return iri(kXsd, "decimal"); }
inline Iri dbl() { return iri(kXsd, "double"); }
inline Iri boolean() { return iri(kXsd, "boolean"); }
inline Iri date() { return iri(kXsd, "date"); }
inline Iri date_time() { return iri(kXsd, "dateTime"); }
}  // namespace xsd

namespace dcat {
inline Iri catalog() { return iri(kDcat, "Catalog"); }
inline Iri dataset_class() { return iri(kDcat, "Dataset"); }
inline Iri dataset() { return iri(kDcat, "dataset"); }
}  // namespace dcat

namespace dcterms {
inline Iri title() { return iri(kDcterms, "title"); }
inline Iri identifier() { return iri(kDcterms, "identifier"); }
inline Iri temporal() { return iri(kDcterms, "temporal"); }
inline Iri format() { return iri(kDcterms, "format"); }
}  // namespace dcterms

namespace csvw {
inline Iri separator() { return iri(kCsvw, "separator"); }
}  // namespace csvw

namespace so {
inline Iri start_date() { return iri(kSo, "startDate"); }
inline Iri end_date() { return iri(kSo, "endDate"); }
}  // namespace so

namespace sml {
inline Iri term(std::string_view local) { return iri(kSml, local); }
inline Iri domain_class() { return term("DomainClass"); }
inline Iri domain_model() { return term("DomainModel"); }
inline Iri attribute() { return term("Attribute"); }
inline Iri text_file() { return term("TextFile"); }
inline Iri database() { return term("Database"); }
inline Iri has_file() { return term("hasFile"); }
inline Iri has_database() { return term("hasDatabase"); }
inline Iri has_attribute() { return term("hasAttribute"); }
inline Iri has_mapping() { return term("hasMapping"); }
inline Iri maps_to_property() { return term("mapsToProperty"); }
inline Iri maps_to_domain() { return term("mapsToDomain"); }
inline Iri column_number() { return term("columnNumber"); }
inline Iri column_name() { return term("columnName"); }
inline Iri file_location() { return term("fileLocation"); }
inline Iri has_header() { return term("hasHeader"); }
inline Iri connection() { return term("connection"); }
inline Iri table() { return term("table"); }
inline Iri mean_value() { return term("meanValue"); }
inline Iri min_value() { return term("minValue"); }
inline Iri max_value() { return term("maxValue"); }
inline Iri number_of_instances() { return term("numberOfInstances"); }
inline Iri number_of_null_values() { return term("numberOfNullValues"); }
inline Iri number_of_distinct_values() { return term("numberOfDistinctValues"); }
// Artifact extensions on domain properties.
inline Iri semantic_kind() { return term("semanticKind"); }
inline Iri geo_axis() { return term("geoAxis"); }
}  // namespace sml

}  // namespace sml::vocab
