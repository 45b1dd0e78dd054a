#include "typdeg/evaluator.hpp"

#include <algorithm>
#include <array>

#include "typdeg/error.hpp"

namespace typdeg::logic {

namespace {

constexpr int kStackSlots = 32;

void flatten(const Formula& f, Op op, std::vector<Formula>& out) {
  if (f.op() == op) {
    flatten(f.left(), op, out);
    flatten(f.right(), op, out);
  } else {
    out.push_back(f);
  }
}

Formula join(Op op, const std::vector<Formula>& parts) {
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = Formula::binary(op, out, parts[i]);
  return out;
}

// Moves conjuncts that ignore an existential's variable out of its scope, and
// disjuncts likewise for a universal. Universes are nonempty, so this is an
// equivalence; it keeps nested witness searches from re-testing outer atoms.
Formula miniscope(const Formula& f) {
  switch (f.op()) {
    case Op::Predicate:
    case Op::Edge:
    case Op::Equal:
      return f;
    case Op::Not:
      return Formula::negation(miniscope(f.left()));
    case Op::ExistsUnique:
      return Formula::quantified(f.op(), f.bound_variable(), miniscope(f.left()));
    case Op::Forall:
    case Op::Exists: {
      const std::string& var = f.bound_variable();
      Formula body = miniscope(f.left());
      const Op chain = f.op() == Op::Exists ? Op::And : Op::Or;
      std::vector<Formula> parts, outside, inside;
      flatten(body, chain, parts);
      for (const auto& part : parts) (part.free_variables().count(var) ? inside : outside).push_back(part);
      if (outside.empty()) return Formula::quantified(f.op(), var, body);
      if (inside.empty()) return body;
      outside.push_back(Formula::quantified(f.op(), var, join(chain, inside)));
      return join(chain, outside);
    }
    default:
      return Formula::binary(f.op(), miniscope(f.left()), miniscope(f.right()));
  }
}

}  // namespace

Evaluator::Evaluator(const Formula& f) : formula_(f) {
  auto free = f.free_variables();
  if (free.size() > 1) throw Error(ErrorKind::FreeVariable, "formula has more than one free variable");
  if (!free.empty()) free_variable_ = *free.begin();
  std::vector<std::pair<std::string, int>> scope;
  if (!free_variable_.empty()) scope.emplace_back(free_variable_, 0);
  root_ = build(miniscope(f), scope);
}

int Evaluator::build(const Formula& f, std::vector<std::pair<std::string, int>>& scope) {
  auto slot_of = [&](const std::string& name) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    throw Error(ErrorKind::Internal, "unresolved variable '" + name + "'");
  };
  auto note_term = [&](const Term& t) {
    if (t.depth > 0) uses_function_ = true;
  };

  Node node;
  node.op = f.op();
  switch (f.op()) {
    case Op::Predicate:
      node.predicate = f.predicate_index() - 1;
      max_predicate_ = std::max(max_predicate_, f.predicate_index());
      node.slot1 = slot_of(f.first_term().variable);
      node.depth1 = f.first_term().depth;
      note_term(f.first_term());
      break;
    case Op::Edge:
    case Op::Equal:
      if (f.op() == Op::Edge) uses_edge_ = true;
      node.slot1 = slot_of(f.first_term().variable);
      node.depth1 = f.first_term().depth;
      node.slot2 = slot_of(f.second_term().variable);
      node.depth2 = f.second_term().depth;
      note_term(f.first_term());
      note_term(f.second_term());
      break;
    case Op::Not:
      node.a = build(f.left(), scope);
      break;
    case Op::Forall:
    case Op::Exists:
    case Op::ExistsUnique:
      node.bind = slots_++;
      scope.emplace_back(f.bound_variable(), node.bind);
      node.a = build(f.left(), scope);
      scope.pop_back();
      break;
    default:
      node.a = build(f.left(), scope);
      node.b = build(f.right(), scope);
      break;
  }
  nodes_.push_back(node);
  return static_cast<int>(nodes_.size()) - 1;
}

void Evaluator::check_structure(const Structure& m) const {
  if (max_predicate_ > 0 && (m.family() != Family::UnaryPredicates || m.k() < max_predicate_)) {
    throw Error(ErrorKind::SignatureMismatch, "formula uses U" + std::to_string(max_predicate_) +
                                                  " but the structure does not interpret it");
  }
  if (uses_edge_ && m.family() != Family::Graph) {
    throw Error(ErrorKind::SignatureMismatch, "formula uses E but the structure is not a graph");
  }
  if (uses_function_ && m.family() != Family::UnaryFunction) {
    throw Error(ErrorKind::SignatureMismatch, "formula uses F but the structure has no function");
  }
}

bool Evaluator::eval(int i, const Structure& m, int* env) const {
  const Node& node = nodes_[static_cast<std::size_t>(i)];
  auto term = [&](int slot, int depth) {
    int v = env[slot];
    for (int d = 0; d < depth; ++d) v = m.apply(v);
    return v;
  };
  switch (node.op) {
    case Op::Predicate:
      return m.in_predicate(node.predicate, term(node.slot1, node.depth1));
    case Op::Edge:
      return m.adjacent(term(node.slot1, node.depth1), term(node.slot2, node.depth2));
    case Op::Equal:
      return term(node.slot1, node.depth1) == term(node.slot2, node.depth2);
    case Op::Not:
      return !eval(node.a, m, env);
    case Op::And:
      return eval(node.a, m, env) && eval(node.b, m, env);
    case Op::Or:
      return eval(node.a, m, env) || eval(node.b, m, env);
    case Op::Implies:
      return !eval(node.a, m, env) || eval(node.b, m, env);
    case Op::Iff:
      return eval(node.a, m, env) == eval(node.b, m, env);
    case Op::Forall:
      for (int v = 0; v < m.n(); ++v) {
        env[node.bind] = v;
        if (!eval(node.a, m, env)) return false;
      }
      return true;
    case Op::Exists:
      for (int v = 0; v < m.n(); ++v) {
        env[node.bind] = v;
        if (eval(node.a, m, env)) return true;
      }
      return false;
    case Op::ExistsUnique: {
      int hits = 0;
      for (int v = 0; v < m.n() && hits < 2; ++v) {
        env[node.bind] = v;
        if (eval(node.a, m, env)) ++hits;
      }
      return hits == 1;
    }
  }
  return false;
}

bool Evaluator::holds_at(const Structure& m, int a) const {
  if (slots_ <= kStackSlots) {
    std::array<int, kStackSlots> env{};
    env[0] = a;
    return eval(root_, m, env.data());
  }
  std::vector<int> env(static_cast<std::size_t>(slots_), 0);
  env[0] = a;
  return eval(root_, m, env.data());
}

int Evaluator::count(const Structure& m, int limit) const {
  if (!is_property()) throw Error(ErrorKind::FreeVariable, "extension size needs a property (one free variable)");
  int hits = 0;
  for (int a = 0; a < m.n() && hits < limit; ++a) {
    if (holds_at(m, a)) ++hits;
  }
  return hits;
}

bool evaluate(const Formula& f, const Structure& m, const Assignment& assignment) {
  Evaluator ev(f);
  ev.check_structure(m);
  if (!ev.is_property()) return ev.holds(m);
  auto it = assignment.find(ev.free_variable());
  if (it == assignment.end()) {
    throw Error(ErrorKind::UnassignedVariable, "free variable '" + ev.free_variable() + "' is not assigned");
  }
  if (it->second < 0 || it->second >= m.n()) {
    throw Error(ErrorKind::OutOfRange, "assigned element outside the universe");
  }
  return ev.holds_at(m, it->second);
}

int extension_size(const Formula& f, const Structure& m) {
  Evaluator ev(f);
  ev.check_structure(m);
  return ev.count(m);
}

const char* to_string(Typicality t) {
  switch (t) {
    case Typicality::Typical: return "typical";
    case Typicality::Atypical: return "atypical";
    case Typicality::Neutral: return "neutral";
  }
  return "?";
}

Typicality classify(const Formula& f, const Structure& m) {
  int c = extension_size(f, m);
  if (2 * c > m.n()) return Typicality::Typical;
  if (2 * c < m.n()) return Typicality::Atypical;
  return Typicality::Neutral;
}

bool satisfies_at_least(const Formula& f, const Structure& m, int mcount) {
  Evaluator ev(f);
  ev.check_structure(m);
  if (!ev.is_property()) throw Error(ErrorKind::FreeVariable, "phi^(m) needs a property (one free variable)");
  if (mcount <= 0) return true;
  return ev.count(m, mcount) >= mcount;
}

}  // namespace typdeg::logic
