#include <algorithm>
#include <set>

#include "sml/rdf/syntax.h"
#include "sml/rdf/vocabulary.h"
#include "sml/sparql/query.h"

namespace sml::sparql {

using rdf::detail::Token;
using rdf::detail::TokenKind;
using rdf::detail::TokenStream;

namespace {

bool orderable(const rdf::Term& t) {
  const auto* lit = std::get_if<rdf::Literal>(&t);
  if (!lit) return false;
  const auto& dt = lit->datatype;
  return dt == vocab::xsd::integer() || dt == vocab::xsd::decimal() ||
         dt == vocab::xsd::date() || dt == vocab::xsd::date_time();
}

class QueryParser {
 public:
  QueryParser(std::string_view text, const rdf::PrefixMap& predeclared)
      : in_(rdf::detail::tokenize(text, rdf::detail::Dialect::SPARQL)) {
    query_.prefixes = predeclared;
  }

  Query run() {
    while (rdf::detail::read_directive(in_, query_.prefixes)) {
    }
    const Token& select = in_.peek();
    if (!select.is_name("SELECT")) in_.fail(select, "SELECT");
    in_.next();
    bool star = false;
    if (in_.accept_punct('*')) {
      star = true;
    } else {
      while (in_.peek().kind == TokenKind::VARIABLE) {
        query_.projection.push_back(in_.next().value);
      }
      if (query_.projection.empty()) in_.fail(in_.peek(), "a projected variable or '*'");
    }
    if (in_.peek().is_name("WHERE")) in_.next();
    group(query_.where, 1);
    if (!in_.at_end()) in_.fail(in_.peek(), "end of query");

    auto vars = pattern_variables(query_.where);
    if (star) {
      for (const auto& v : vars) {
        if (!v.starts_with("_:")) query_.projection.push_back(v);
      }
    }
    std::set<std::string> seen(vars.begin(), vars.end());
    for (const auto& v : query_.projection) {
      if (!seen.contains(v)) {
        query_.diagnostics.push_back(Diagnostic{
            Severity::WARNING, "projected variable does not occur in the pattern", "?" + v});
      }
    }
    return std::move(query_);
  }

 private:
  void group(Pattern& out, std::size_t depth) {
    const Token& open = in_.peek();
    if (depth > kMaxPatternDepth) {
      in_.fail(open, "", "group nesting deeper than " + std::to_string(kMaxPatternDepth));
    }
    in_.expect_punct('{', "to open a group pattern");
    while (!in_.accept_punct('}')) {
      const Token& t = in_.peek();
      if (t.kind == TokenKind::END) in_.fail(t, "'}'");
      if (t.is_punct('.')) {
        in_.next();
      } else if (t.is_name("OPTIONAL")) {
        in_.next();
        Pattern inner;
        group(inner, depth + 1);
        out.optionals.push_back(std::move(inner));
      } else if (t.is_name("FILTER")) {
        in_.next();
        out.filters.push_back(filter());
      } else {
        triples_same_subject(out);
      }
    }
  }

  FilterExpr filter() {
    in_.expect_punct('(', "after FILTER");
    const Token& var = in_.peek();
    if (var.kind != TokenKind::VARIABLE) in_.fail(var, "a variable on the left of the comparison");
    in_.next();
    const Token& op = in_.peek();
    if (op.kind != TokenKind::OPERATOR) in_.fail(op, "one of = != < <= > >=");
    in_.next();
    FilterExpr f;
    f.lhs = Variable{var.value};
    if (op.value == "=") f.op = CompareOp::EQ;
    else if (op.value == "!=") f.op = CompareOp::NE;
    else if (op.value == "<") f.op = CompareOp::LT;
    else if (op.value == "<=") f.op = CompareOp::LE;
    else if (op.value == ">") f.op = CompareOp::GT;
    else f.op = CompareOp::GE;
    const Token& rhs = in_.peek();
    if (rdf::detail::starts_literal(rhs)) {
      f.rhs = rdf::detail::read_literal(in_, query_.prefixes);
    } else if (rdf::detail::starts_iri(rhs, false)) {
      f.rhs = rdf::detail::read_iri(in_, query_.prefixes, false);
    } else {
      in_.fail(rhs, "a literal or IRI on the right of the comparison");
    }
    bool ordering = f.op != CompareOp::EQ && f.op != CompareOp::NE;
    if (ordering && !orderable(f.rhs)) {
      in_.fail(rhs, "a numeric or date literal",
               "ordering comparison needs a numeric or date operand");
    }
    in_.expect_punct(')', "to close FILTER");
    return f;
  }

  Variable fresh() { return Variable{"_:b" + std::to_string(next_blank_++)}; }

  void triples_same_subject(Pattern& out) {
    if (in_.peek().is_punct('[')) {
      PatternTerm subject = blank_property_list(out);
      const Token& t = in_.peek();
      if (!t.is_punct('.') && !t.is_punct('}')) predicate_object_list(out, subject);
    } else {
      PatternTerm subject = term(out, false);
      predicate_object_list(out, subject);
    }
    const Token& t = in_.peek();
    if (!t.is_punct('.') && !t.is_punct('}') && !t.is_name("OPTIONAL") && !t.is_name("FILTER")) {
      in_.fail(t, "'.' or '}'");
    }
  }

  PatternTerm blank_property_list(Pattern& out) {
    Variable node = fresh();
    blank_body(out, node);
    return node;
  }

  void blank_body(Pattern& out, const Variable& node) {
    in_.expect_punct('[', "");
    if (!in_.peek().is_punct(']')) predicate_object_list(out, node);
    in_.expect_punct(']', "to close the blank node property list");
  }

  void predicate_object_list(Pattern& out, const PatternTerm& subject) {
    while (true) {
      PatternTerm predicate = verb();
      do {
        if (in_.peek().is_punct('[')) {
          // The linking pattern goes first so joins bind the node early.
          Variable node = fresh();
          out.required.push_back(TriplePattern{subject, predicate, node});
          blank_body(out, node);
        } else {
          out.required.push_back(TriplePattern{subject, predicate, term(out, true)});
        }
      } while (in_.accept_punct(','));
      if (!in_.accept_punct(';')) return;
      while (in_.accept_punct(';')) {
      }
      const Token& t = in_.peek();
      if (t.is_punct('.') || t.is_punct(']') || t.is_punct('}')) return;
    }
  }

  PatternTerm verb() {
    const Token& t = in_.peek();
    if (t.kind == TokenKind::VARIABLE) {
      in_.next();
      return Variable{t.value};
    }
    return rdf::Term(rdf::detail::read_iri(in_, query_.prefixes, true));
  }

  PatternTerm term(Pattern&, bool object_position) {
    const Token& t = in_.peek();
    if (t.kind == TokenKind::VARIABLE) {
      in_.next();
      return Variable{t.value};
    }
    if (t.kind == TokenKind::BLANK_LABEL) {
      in_.next();
      return Variable{"_:l" + t.value};
    }
    if (rdf::detail::starts_iri(t, false)) {
      return rdf::Term(rdf::detail::read_iri(in_, query_.prefixes, false));
    }
    if (object_position && rdf::detail::starts_literal(t)) {
      return rdf::Term(rdf::detail::read_literal(in_, query_.prefixes));
    }
    if (t.is_punct('(') || t.is_punct(')')) {
      in_.fail_code(ErrorCode::UNSUPPORTED_SYNTAX, t, "", "collections are not supported");
    }
    in_.fail(t, object_position ? "a variable, IRI, blank node or literal"
                                : "a variable, IRI or blank node");
  }

  TokenStream in_;
  Query query_;
  std::size_t next_blank_ = 0;
};

void collect(const Pattern& p, std::vector<std::string>& out, std::set<std::string>& seen) {
  auto add = [&](const PatternTerm& t) {
    if (const auto* v = std::get_if<Variable>(&t)) {
      if (seen.insert(v->name).second) out.push_back(v->name);
    }
  };
  for (const auto& tp : p.required) {
    add(tp.subject);
    add(tp.predicate);
    add(tp.object);
  }
  for (const auto& o : p.optionals) collect(o, out, seen);
}

}  // namespace

Query parse_query(std::string_view text, const rdf::PrefixMap& predeclared) {
  return QueryParser(text, predeclared).run();
}

std::vector<std::string> pattern_variables(const Pattern& p) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect(p, out, seen);
  return out;
}

}  // namespace sml::sparql
