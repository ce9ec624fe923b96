#include <algorithm>
#include <sstream>

#include "sml/rdf/vocabulary.h"
#include "sml/sparql/query.h"

namespace sml::sparql {

namespace {

using rdf::Iri;
using rdf::Literal;
using rdf::Term;

// Resolves a pattern position under a partial solution: a bound term, or the
// name of a still-free variable.
struct Resolved {
  std::optional<Term> term;
  std::optional<std::string> free_var;
};

Resolved resolve(const PatternTerm& pt, const Solution& s) {
  if (const auto* v = std::get_if<Variable>(&pt)) {
    auto it = s.find(v->name);
    if (it != s.end()) return {it->second, std::nullopt};
    return {std::nullopt, v->name};
  }
  return {std::get<Term>(pt), std::nullopt};
}

bool bind_var(Solution& s, const std::optional<std::string>& var, const Term& value) {
  if (!var) return true;
  auto [it, inserted] = s.try_emplace(*var, value);
  // Same variable twice in one pattern, e.g. ?x <p> ?x.
  return inserted || it->second == value;
}

std::vector<Solution> join_pattern(const std::vector<Solution>& input, const TriplePattern& tp,
                                   const rdf::Graph& g) {
  std::vector<Solution> out;
  for (const auto& s : input) {
    Resolved subj = resolve(tp.subject, s);
    Resolved pred = resolve(tp.predicate, s);
    Resolved obj = resolve(tp.object, s);
    std::optional<Iri> p;
    if (pred.term) {
      const auto* iri = std::get_if<Iri>(&*pred.term);
      if (!iri) continue;  // a literal or blank bound to a predicate variable
      p = *iri;
    }
    if (subj.term && rdf::is_literal(*subj.term)) continue;
    for (const auto& t : g.match(subj.term, p, obj.term)) {
      Solution next = s;
      if (bind_var(next, subj.free_var, t.subject) && bind_var(next, pred.free_var, Term(t.predicate)) &&
          bind_var(next, obj.free_var, t.object)) {
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

Solution merge(const Solution& a, const Solution& b) {
  Solution out = a;
  out.insert(b.begin(), b.end());
  return out;
}

bool all_filters(const std::vector<FilterExpr>& filters, const Solution& s) {
  return std::all_of(filters.begin(), filters.end(),
                     [&](const FilterExpr& f) { return filter_holds(f, s); });
}

// Group evaluation without the group's own filters.
std::vector<Solution> evaluate_core(const Pattern& p, const rdf::Graph& g) {
  std::vector<Solution> solutions{Solution{}};
  for (const auto& tp : p.required) {
    solutions = join_pattern(solutions, tp, g);
    if (solutions.empty()) break;
  }
  for (const auto& opt : p.optionals) {
    if (solutions.empty()) break;
    std::vector<Solution> right = evaluate_core(opt, g);
    std::vector<Solution> joined;
    for (const auto& left : solutions) {
      bool extended = false;
      for (const auto& r : right) {
        if (!compatible(left, r)) continue;
        Solution m = merge(left, r);
        if (!all_filters(opt.filters, m)) continue;
        joined.push_back(std::move(m));
        extended = true;
      }
      if (!extended) joined.push_back(left);
    }
    solutions = std::move(joined);
  }
  return solutions;
}

bool is_numeric(const Literal& l) {
  return (l.datatype == vocab::xsd::integer() || l.datatype == vocab::xsd::decimal()) &&
         compare_decimal(l.lexical, l.lexical).has_value();
}

bool is_date(const Literal& l) {
  return l.datatype == vocab::xsd::date() || l.datatype == vocab::xsd::date_time();
}

// Three-way comparison in value space, nullopt on a type error.
std::optional<int> compare_values(const Term& a, const Term& b) {
  const auto* la = std::get_if<Literal>(&a);
  const auto* lb = std::get_if<Literal>(&b);
  if (!la || !lb) return std::nullopt;
  if (is_numeric(*la) && is_numeric(*lb)) return compare_decimal(la->lexical, lb->lexical);
  if (is_date(*la) && la->datatype == lb->datatype) {
    int c = la->lexical.compare(lb->lexical);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  return std::nullopt;
}

struct DecimalParts {
  bool negative = false;
  std::string integer;   // no leading zeros
  std::string fraction;  // no trailing zeros
};

std::optional<DecimalParts> split_decimal(std::string_view text) {
  DecimalParts out;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    out.negative = text[i] == '-';
    ++i;
  }
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    out.integer += text[i++];
    ++digits;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      out.fraction += text[i++];
      ++digits;
    }
  }
  if (i != text.size() || digits == 0) return std::nullopt;
  out.integer.erase(0, out.integer.find_first_not_of('0') == std::string::npos
                           ? out.integer.size()
                           : out.integer.find_first_not_of('0'));
  while (!out.fraction.empty() && out.fraction.back() == '0') out.fraction.pop_back();
  if (out.integer.empty() && out.fraction.empty()) out.negative = false;
  return out;
}

int compare_magnitude(const DecimalParts& a, const DecimalParts& b) {
  if (a.integer.size() != b.integer.size()) return a.integer.size() < b.integer.size() ? -1 : 1;
  if (int c = a.integer.compare(b.integer); c != 0) return c < 0 ? -1 : 1;
  int c = a.fraction.compare(b.fraction);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace

std::optional<int> compare_decimal(std::string_view a, std::string_view b) {
  auto pa = split_decimal(a);
  auto pb = split_decimal(b);
  if (!pa || !pb) return std::nullopt;
  if (pa->negative != pb->negative) return pa->negative ? -1 : 1;
  int mag = compare_magnitude(*pa, *pb);
  return pa->negative ? -mag : mag;
}

bool compatible(const Solution& a, const Solution& b) {
  const Solution& small = a.size() <= b.size() ? a : b;
  const Solution& large = a.size() <= b.size() ? b : a;
  for (const auto& [var, value] : small) {
    auto it = large.find(var);
    if (it != large.end() && it->second != value) return false;
  }
  return true;
}

bool filter_holds(const FilterExpr& f, const Solution& s) {
  auto it = s.find(f.lhs.name);
  if (it == s.end()) return false;
  const Term& lhs = it->second;
  auto cmp = compare_values(lhs, f.rhs);
  switch (f.op) {
    case CompareOp::EQ: return cmp ? *cmp == 0 : lhs == f.rhs;
    case CompareOp::NE: return cmp ? *cmp != 0 : lhs != f.rhs;
    case CompareOp::LT: return cmp && *cmp < 0;
    case CompareOp::LE: return cmp && *cmp <= 0;
    case CompareOp::GT: return cmp && *cmp > 0;
    case CompareOp::GE: return cmp && *cmp >= 0;
  }
  return false;
}

std::vector<Solution> evaluate_pattern(const Pattern& p, const rdf::Graph& g) {
  std::vector<Solution> solutions = evaluate_core(p, g);
  std::erase_if(solutions, [&](const Solution& s) { return !all_filters(p.filters, s); });
  return solutions;
}

std::vector<Solution> evaluate(const Query& q, const rdf::Graph& g) {
  std::vector<Solution> solutions = evaluate_pattern(q.where, g);
  for (auto& s : solutions) {
    Solution projected;
    for (const auto& v : q.projection) {
      auto it = s.find(v);
      if (it != s.end()) projected.insert(*it);
    }
    s = std::move(projected);
  }
  auto key = [&](const Solution& s) {
    std::vector<std::pair<bool, std::string>> k;
    for (const auto& v : q.projection) {
      auto it = s.find(v);
      k.emplace_back(it != s.end(), it != s.end() ? rdf::to_ntriples(it->second) : "");
    }
    return k;
  };
  std::stable_sort(solutions.begin(), solutions.end(),
                   [&](const Solution& a, const Solution& b) { return key(a) < key(b); });
  return solutions;
}

std::string to_tsv(const Query& q, const std::vector<Solution>& solutions) {
  std::ostringstream out;
  for (std::size_t i = 0; i < q.projection.size(); ++i) {
    out << (i ? "\t" : "") << "?" << q.projection[i];
  }
  out << "\n";
  for (const auto& s : solutions) {
    for (std::size_t i = 0; i < q.projection.size(); ++i) {
      if (i) out << "\t";
      auto it = s.find(q.projection[i]);
      if (it != s.end()) out << rdf::to_ntriples(it->second);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace sml::sparql
