#include "typdeg/formula.hpp"

#include <algorithm>
#include <functional>

#include "typdeg/error.hpp"

namespace typdeg {

Signature Signature::unary(int k) {
  if (k < 1) throw Error(ErrorKind::Usage, "unary signature needs k >= 1");
  return Signature(Family::UnaryPredicates, k);
}
Signature Signature::function() { return Signature(Family::UnaryFunction, 0); }
Signature Signature::graph() { return Signature(Family::Graph, 0); }

Signature Signature::parse(const std::string& text) {
  if (text == "function") return function();
  if (text == "graph") return graph();
  if (text.rfind("unary:", 0) == 0) {
    std::string digits = text.substr(6);
    if (digits.empty() || digits.size() > 4 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error(ErrorKind::Usage, "bad predicate count in signature '" + text + "'");
    }
    return unary(std::stoi(digits));
  }
  throw Error(ErrorKind::Usage, "unknown signature '" + text + "' (expected unary:k, function or graph)");
}

const char* Signature::family_name() const {
  switch (family_) {
    case Family::UnaryPredicates: return "unary";
    case Family::UnaryFunction: return "function";
    case Family::Graph: return "graph";
  }
  return "?";
}

std::string Signature::to_string() const {
  if (family_ == Family::UnaryPredicates) return "unary:" + std::to_string(k_);
  return family_name();
}

const char* to_string(Convention conv) {
  return conv == Convention::Free ? "free" : "paper-distinct";
}

Convention parse_convention(const std::string& text) {
  if (text == "free") return Convention::Free;
  if (text == "paper-distinct") return Convention::PaperDistinct;
  throw Error(ErrorKind::Usage, "unknown convention '" + text + "' (expected free or paper-distinct)");
}

}  // namespace typdeg

namespace typdeg::logic {

bool is_quantifier(Op op) { return op == Op::Forall || op == Op::Exists || op == Op::ExistsUnique; }
bool is_binary(Op op) { return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::Iff; }
bool is_atom(Op op) { return op == Op::Predicate || op == Op::Edge || op == Op::Equal; }

Formula Formula::predicate(int index, Term t) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Predicate;
  n->predicate = index;
  n->t1 = std::move(t);
  return Formula(std::move(n));
}

Formula Formula::edge(Term a, Term b) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Edge;
  n->t1 = std::move(a);
  n->t2 = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::equal(Term a, Term b) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Equal;
  n->t1 = std::move(a);
  n->t2 = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Not;
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::binary(Op op, Formula a, Formula b) {
  if (!is_binary(op)) throw Error(ErrorKind::Internal, "binary() called with a non-binary op");
  auto n = std::make_shared<FormulaNode>();
  n->op = op;
  n->children.push_back(std::move(a));
  n->children.push_back(std::move(b));
  return Formula(std::move(n));
}

Formula Formula::quantified(Op op, std::string var, Formula body) {
  if (!is_quantifier(op)) throw Error(ErrorKind::Internal, "quantified() called with a non-quantifier op");
  auto n = std::make_shared<FormulaNode>();
  n->op = op;
  n->variable = std::move(var);
  n->children.push_back(std::move(body));
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula a, Formula b) { return binary(Op::And, std::move(a), std::move(b)); }
Formula Formula::disjunction(Formula a, Formula b) { return binary(Op::Or, std::move(a), std::move(b)); }
Formula Formula::implication(Formula a, Formula b) { return binary(Op::Implies, std::move(a), std::move(b)); }
Formula Formula::biconditional(Formula a, Formula b) { return binary(Op::Iff, std::move(a), std::move(b)); }
Formula Formula::forall(std::string var, Formula body) { return quantified(Op::Forall, std::move(var), std::move(body)); }
Formula Formula::exists(std::string var, Formula body) { return quantified(Op::Exists, std::move(var), std::move(body)); }
Formula Formula::exists_unique(std::string var, Formula body) {
  return quantified(Op::ExistsUnique, std::move(var), std::move(body));
}

Op Formula::op() const { return node_->op; }
int Formula::predicate_index() const { return node_->predicate; }
const Term& Formula::first_term() const { return node_->t1; }
const Term& Formula::second_term() const { return node_->t2; }
const Formula& Formula::left() const { return node_->children.at(0); }
const Formula& Formula::right() const { return node_->children.at(1); }
const std::string& Formula::bound_variable() const { return node_->variable; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const FormulaNode& x = *a.node_;
  const FormulaNode& y = *b.node_;
  if (x.op != y.op) return false;
  switch (x.op) {
    case Op::Predicate:
      return x.predicate == y.predicate && x.t1 == y.t1;
    case Op::Edge:
    case Op::Equal:
      return x.t1 == y.t1 && x.t2 == y.t2;
    default:
      break;
  }
  if (x.variable != y.variable || x.children.size() != y.children.size()) return false;
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto visit_term = [&](const Term& t) {
    if (std::find(bound.begin(), bound.end(), t.variable) == bound.end()) out.insert(t.variable);
  };
  switch (f.op()) {
    case Op::Predicate:
      visit_term(f.first_term());
      return;
    case Op::Edge:
    case Op::Equal:
      visit_term(f.first_term());
      visit_term(f.second_term());
      return;
    case Op::Not:
      collect_free(f.left(), bound, out);
      return;
    case Op::Forall:
    case Op::Exists:
    case Op::ExistsUnique:
      bound.push_back(f.bound_variable());
      collect_free(f.left(), bound, out);
      bound.pop_back();
      return;
    default:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
  }
}

void collect_all_variables(const Formula& f, std::set<std::string>& out) {
  switch (f.op()) {
    case Op::Predicate:
      out.insert(f.first_term().variable);
      return;
    case Op::Edge:
    case Op::Equal:
      out.insert(f.first_term().variable);
      out.insert(f.second_term().variable);
      return;
    case Op::Not:
      collect_all_variables(f.left(), out);
      return;
    case Op::Forall:
    case Op::Exists:
    case Op::ExistsUnique:
      out.insert(f.bound_variable());
      collect_all_variables(f.left(), out);
      return;
    default:
      collect_all_variables(f.left(), out);
      collect_all_variables(f.right(), out);
      return;
  }
}

}  // namespace

std::set<std::string> Formula::free_variables() const {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(*this, bound, out);
  return out;
}

int Formula::max_term_depth() const {
  switch (op()) {
    case Op::Predicate:
      return first_term().depth;
    case Op::Edge:
    case Op::Equal:
      return std::max(first_term().depth, second_term().depth);
    case Op::Not:
    case Op::Forall:
    case Op::Exists:
    case Op::ExistsUnique:
      return left().max_term_depth();
    default:
      return std::max(left().max_term_depth(), right().max_term_depth());
  }
}

void check_signature(const Formula& f, const Signature& sig) {
  auto check_term = [&](const Term& t) {
    if (t.depth > 0 && sig.family() != Family::UnaryFunction) {
      throw Error(ErrorKind::UnknownSymbol, "function symbol F is not in signature " + sig.to_string());
    }
  };
  switch (f.op()) {
    case Op::Predicate:
      if (sig.family() != Family::UnaryPredicates) {
        throw Error(ErrorKind::UnknownSymbol, "predicate U" + std::to_string(f.predicate_index()) +
                                                  " is not in signature " + sig.to_string());
      }
      if (f.predicate_index() < 1 || f.predicate_index() > sig.k()) {
        throw Error(ErrorKind::UnknownSymbol, "predicate U" + std::to_string(f.predicate_index()) +
                                                  " is out of range for k=" + std::to_string(sig.k()));
      }
      check_term(f.first_term());
      return;
    case Op::Edge:
      if (sig.family() != Family::Graph) {
        throw Error(ErrorKind::UnknownSymbol, "relation E is not in signature " + sig.to_string());
      }
      check_term(f.first_term());
      check_term(f.second_term());
      return;
    case Op::Equal:
      check_term(f.first_term());
      check_term(f.second_term());
      return;
    case Op::Not:
    case Op::Forall:
    case Op::Exists:
    case Op::ExistsUnique:
      check_signature(f.left(), sig);
      return;
    default:
      check_signature(f.left(), sig);
      check_signature(f.right(), sig);
      return;
  }
}

std::string property_variable(const Formula& f) {
  auto free = f.free_variables();
  if (free.size() != 1) {
    throw Error(ErrorKind::FreeVariable, "a property needs exactly one free variable, found " +
                                             std::to_string(free.size()));
  }
  return *free.begin();
}

namespace {

Formula substitute(const Formula& f, const std::string& from, const std::string& to) {
  auto sub = [&](const Term& t) { return t.variable == from ? Term{to, t.depth} : t; };
  switch (f.op()) {
    case Op::Predicate:
      return Formula::predicate(f.predicate_index(), sub(f.first_term()));
    case Op::Edge:
      return Formula::edge(sub(f.first_term()), sub(f.second_term()));
    case Op::Equal:
      return Formula::equal(sub(f.first_term()), sub(f.second_term()));
    case Op::Not:
      return Formula::negation(substitute(f.left(), from, to));
    case Op::Forall:
    case Op::Exists:
    case Op::ExistsUnique:
      if (f.bound_variable() == from) return f;  // shadowed
      return Formula::quantified(f.op(), f.bound_variable(), substitute(f.left(), from, to));
    default:
      return Formula::binary(f.op(), substitute(f.left(), from, to), substitute(f.right(), from, to));
  }
}

}  // namespace

Formula substitute_free(const Formula& f, const std::string& from, const std::string& to) {
  std::set<std::string> used;
  collect_all_variables(f, used);
  if (from != to && used.count(to) != 0) {
    throw Error(ErrorKind::Internal, "substitution target '" + to + "' already occurs in the formula");
  }
  return substitute(f, from, to);
}

Formula at_least_sentence(const Formula& f, int m) {
  if (m < 1) throw Error(ErrorKind::OutOfRange, "at_least_sentence requires m >= 1");
  std::string var = property_variable(f);
  std::set<std::string> used;
  collect_all_variables(f, used);

  // Fresh witness names v1, v2, ... skipping anything already in use.
  std::vector<std::string> witnesses;
  for (int i = 1; static_cast<int>(witnesses.size()) < m; ++i) {
    std::string name = "v" + std::to_string(i);
    if (used.count(name) == 0) witnesses.push_back(name);
  }

  std::vector<Formula> conjuncts;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      conjuncts.push_back(Formula::negation(Formula::equal({witnesses[i], 0}, {witnesses[j], 0})));
    }
  }
  for (int i = 0; i < m; ++i) conjuncts.push_back(substitute_free(f, var, witnesses[i]));

  Formula body = conjuncts.front();
  for (std::size_t i = 1; i < conjuncts.size(); ++i) body = Formula::conjunction(body, conjuncts[i]);
  for (int i = m - 1; i >= 0; --i) body = Formula::exists(witnesses[i], body);
  return body;
}

void BasicPropertyDescriptor::validate(int k) const {
  if (indices.empty() || static_cast<int>(indices.size()) > k) {
    throw Error(ErrorKind::Usage, "basic property needs 1 <= p <= k indices");
  }
  if (signs.size() != indices.size()) {
    throw Error(ErrorKind::Usage, "basic property needs one sign per index");
  }
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 1 || indices[i] > k) throw Error(ErrorKind::Usage, "basic property index out of range");
    if (i > 0 && indices[i] <= indices[i - 1]) {
      throw Error(ErrorKind::Usage, "basic property indices must be strictly increasing");
    }
    if (signs[i] != 0 && signs[i] != 1) throw Error(ErrorKind::Usage, "basic property signs must be 0 or 1");
  }
}

Formula BasicPropertyDescriptor::to_formula(const std::string& var) const {
  auto literal = [&](std::size_t i) {
    Formula atom = Formula::predicate(indices[i], {var, 0});
    return signs[i] == 1 ? atom : Formula::negation(atom);
  };
  Formula out = literal(0);
  for (std::size_t i = 1; i < indices.size(); ++i) out = Formula::conjunction(out, literal(i));
  return out;
}

}  // namespace typdeg::logic
