#include "sml/rdf/turtle.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sml/rdf/vocabulary.h"

namespace sml::rdf {

using detail::Token;
using detail::TokenKind;
using detail::TokenStream;

namespace {

class TurtleParser {
 public:
  TurtleParser(std::string_view text, const PrefixMap& predeclared)
      : in_(detail::tokenize(text, detail::Dialect::TURTLE)), prefixes_(predeclared) {}

  TurtleResult run() {
    while (!in_.at_end()) {
      if (detail::read_directive(in_, prefixes_)) continue;
      statement();
    }
    result_.graph.prefixes() = prefixes_;
    return std::move(result_);
  }

 private:
  BlankNode fresh_blank() { return BlankNode{"b" + std::to_string(next_blank_++)}; }

  BlankNode labelled_blank(const std::string& label) {
    auto [it, inserted] = labels_.try_emplace(label);
    if (inserted) it->second = fresh_blank();
    return it->second;
  }

  void reject_collection(const Token& t) {
    if (t.is_punct('(') || t.is_punct(')')) {
      in_.fail_code(ErrorCode::UNSUPPORTED_SYNTAX, t, "",
                    "RDF collections '( ... )' are not supported");
    }
  }

  void statement() {
    const Token& t = in_.peek();
    reject_collection(t);
    if (t.is_punct('[')) {
      Term subject = blank_property_list();
      if (!in_.peek().is_punct('.')) predicate_object_list(subject);
    } else {
      Term subject = subject_term();
      predicate_object_list(subject);
    }
    in_.expect_punct('.', "to end the statement");
  }

  Term subject_term() {
    const Token& t = in_.peek();
    if (t.kind == TokenKind::BLANK_LABEL) {
      in_.next();
      return labelled_blank(t.value);
    }
    if (detail::starts_iri(t, false)) return detail::read_iri(in_, prefixes_, false);
    if (detail::starts_literal(t)) {
      in_.fail(t, "a subject", "literals cannot be subjects");
    }
    in_.fail(t, "a subject (IRI, prefixed name or blank node)");
  }

  // '[' predicateObjectList? ']'
  Term blank_property_list() {
    in_.expect_punct('[', "");
    BlankNode node = fresh_blank();
    if (!in_.peek().is_punct(']')) predicate_object_list(node);
    in_.expect_punct(']', "to close the blank node property list");
    return node;
  }

  void predicate_object_list(const Term& subject) {
    while (true) {
      Iri predicate = detail::read_iri(in_, prefixes_, true);
      object_list(subject, predicate);
      if (!in_.accept_punct(';')) return;
      // Repeated and trailing ';' are allowed.
      while (in_.accept_punct(';')) {
      }
      const Token& t = in_.peek();
      if (t.is_punct('.') || t.is_punct(']') || t.kind == TokenKind::END) return;
    }
  }

  void object_list(const Term& subject, const Iri& predicate) {
    do {
      Term obj = object_term();
      if (!result_.graph.insert(Triple{subject, predicate, obj})) {
        result_.diagnostics.push_back(
            Diagnostic{Severity::INFO, "duplicate triple ignored", to_ntriples(subject)});
      }
    } while (in_.accept_punct(','));
  }

  Term object_term() {
    const Token& t = in_.peek();
    reject_collection(t);
    if (t.is_punct('[')) return blank_property_list();
    if (t.kind == TokenKind::BLANK_LABEL) {
      in_.next();
      return labelled_blank(t.value);
    }
    if (detail::starts_iri(t, false)) return detail::read_iri(in_, prefixes_, false);
    if (detail::starts_literal(t)) return detail::read_literal(in_, prefixes_);
    in_.fail(t, "an object (IRI, blank node or literal)");
  }

  TokenStream in_;
  PrefixMap prefixes_;
  TurtleResult result_;
  std::map<std::string, BlankNode> labels_;
  std::size_t next_blank_ = 0;
};

class TurtleWriter {
 public:
  explicit TurtleWriter(const Graph& g) : g_(g) {
    for (const auto& t : g_) {
      by_subject_[t.subject].push_back(&t);
      if (is_blank(t.object)) ++object_refs_[std::get<BlankNode>(t.object)];
    }
    for (const auto& [node, refs] : object_refs_) {
      if (refs == 1) inline_.insert(node);
    }
  }

  std::string run() {
    for (const auto& [prefix, ns] : g_.prefixes()) {
      out_ << "@prefix " << prefix << ": <" << ns << "> .\n";
    }
    if (!g_.prefixes().empty() && !g_.empty()) out_ << "\n";

    std::vector<std::pair<std::string, Term>> subjects;
    for (const auto& [subject, triples] : by_subject_) {
      if (is_blank(subject) && inline_.contains(std::get<BlankNode>(subject))) continue;
      subjects.emplace_back(to_ntriples(subject), subject);
    }
    std::sort(subjects.begin(), subjects.end());
    for (const auto& [key, subject] : subjects) write_block(subject);

    // Blank nodes only reachable through a cycle of single references were
    // never inlined; break the cycle by writing one of them at top level.
    while (true) {
      std::optional<BlankNode> leftover;
      for (const auto& node : inline_) {
        if (!emitted_.contains(node) && by_subject_.contains(node)) {
          leftover = node;
          break;
        }
      }
      if (!leftover) break;
      inline_.erase(*leftover);
      write_block(*leftover);
    }
    return out_.str();
  }

 private:
  void write_block(const Term& subject) {
    out_ << render(subject) << " ";
    write_predicates(subject, 1);
    out_ << " .\n";
  }

  std::vector<const Triple*> sorted_triples(const Term& subject) const {
    auto it = by_subject_.find(subject);
    if (it == by_subject_.end()) return {};
    std::vector<const Triple*> triples = it->second;
    auto type = vocab::rdf::type();
    std::stable_sort(triples.begin(), triples.end(), [&](const Triple* a, const Triple* b) {
      bool at = a->predicate == type;
      bool bt = b->predicate == type;
      if (at != bt) return at;
      if (a->predicate != b->predicate) return a->predicate < b->predicate;
      return to_ntriples(a->object) < to_ntriples(b->object);
    });
    return triples;
  }

  void write_predicates(const Term& subject, int depth) {
    auto triples = sorted_triples(subject);
    std::string indent(static_cast<std::size_t>(depth) * 4, ' ');
    const Iri* current = nullptr;
    for (const Triple* t : triples) {
      if (current && *current == t->predicate) {
        out_ << ", ";
      } else {
        if (current) out_ << " ;\n" << indent;
        out_ << render_predicate(t->predicate) << " ";
        current = &t->predicate;
      }
      write_object(t->object, depth);
    }
  }

  void write_object(const Term& obj, int depth) {
    if (is_blank(obj)) {
      const auto& node = std::get<BlankNode>(obj);
      if (inline_.contains(node) && !emitted_.contains(node)) {
        emitted_.insert(node);
        if (!by_subject_.contains(node)) {
          out_ << "[]";
          return;
        }
        out_ << "[ ";
        write_predicates(obj, depth + 1);
        out_ << " ]";
        return;
      }
    }
    out_ << render(obj);
  }

  std::string render_predicate(const Iri& p) const {
    if (p == vocab::rdf::type()) return "a";
    return render(p);
  }

  std::string render_iri(const Iri& iri) const {
    if (auto c = compact(iri, g_.prefixes())) return *c;
    return "<" + iri.value + ">";
  }

  std::string render(const Term& t) const {
    if (const auto* iri = std::get_if<Iri>(&t)) return render_iri(*iri);
    if (const auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->label;
    const auto& lit = std::get<Literal>(t);
    std::string out = "\"" + escape_string(lit.lexical) + "\"";
    if (lit.language) return out + "@" + *lit.language;
    if (lit.datatype == vocab::xsd::string()) return out;
    return out + "^^" + render_iri(lit.datatype);
  }

  const Graph& g_;
  std::map<Term, std::vector<const Triple*>> by_subject_;
  std::map<BlankNode, std::size_t> object_refs_;
  std::set<BlankNode> inline_;
  std::set<BlankNode> emitted_;
  std::ostringstream out_;
};

}  // namespace

TurtleResult parse_turtle(std::string_view text, const PrefixMap& predeclared) {
  return TurtleParser(text, predeclared).run();
}

std::string serialize_turtle(const Graph& g) { return TurtleWriter(g).run(); }

std::string read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::IO_NOT_FOUND, "file not found: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IO_ERROR, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TurtleResult read_turtle_file(const std::filesystem::path& path,
                              const PrefixMap& predeclared) {
  return parse_turtle(read_file(path), predeclared);
}

}  // namespace sml::rdf
