#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "typdeg/signature.hpp"

namespace typdeg::logic {

/// A term is a variable wrapped in `depth` applications of F: F(F(...F(v)...)).
struct Term {
  std::string variable;
  int depth = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

enum class Op {
  Predicate,  // U_i(t)
  Edge,       // E(t, t')
  Equal,      // t = t'
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
  ExistsUnique,
};

bool is_quantifier(Op op);
bool is_binary(Op op);
bool is_atom(Op op);

struct FormulaNode;

/// Immutable first-order formula. Copies share structure.
class Formula {
 public:
  static Formula predicate(int index, Term t);
  static Formula edge(Term a, Term b);
  static Formula equal(Term a, Term b);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula biconditional(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula exists_unique(std::string var, Formula body);
  static Formula binary(Op op, Formula a, Formula b);
  static Formula quantified(Op op, std::string var, Formula body);

  Op op() const;
  /// Predicate index, 1-based. Only for Op::Predicate.
  int predicate_index() const;
  /// Atom arguments. `second_term` is only meaningful for Edge and Equal.
  const Term& first_term() const;
  const Term& second_term() const;
  /// Operand of Not, left operand of a binary connective, body of a quantifier.
  const Formula& left() const;
  const Formula& right() const;
  const std::string& bound_variable() const;

  std::set<std::string> free_variables() const;
  /// Deepest F-nesting among all terms.
  int max_term_depth() const;
  bool is_sentence() const { return free_variables().empty(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  Op op;
  int predicate = 0;
  Term t1, t2;
  std::vector<Formula> children;
  std::string variable;
};

/// Throws Error(UnknownSymbol) when `f` uses a symbol outside `sig`
/// (predicate index beyond k, E outside graphs, F outside the function family).
void check_signature(const Formula& f, const Signature& sig);

/// The distinguished free variable of a property; throws Error(FreeVariable)
/// unless exactly one variable is free.
std::string property_variable(const Formula& f);

/// Replaces free occurrences of `from` by the variable `to`. `to` must not
/// occur in `f` at all.
Formula substitute_free(const Formula& f, const std::string& from, const std::string& to);

/// The sentence "f holds of at least m distinct elements":
///   exists v1 ... exists vm (AND_{i<j} vi != vj) & f(v1) & ... & f(vm).
/// Requires m >= 1 and `f` a property.
Formula at_least_sentence(const Formula& f, int m);

/// Signed conjunction of unary predicates: U_{i1}^{e1}(x) & ... & U_{ip}^{ep}(x).
struct BasicPropertyDescriptor {
  std::vector<int> indices;  // strictly increasing, 1-based
  std::vector<int> signs;    // 0 or 1, one per index

  /// Throws Error(Usage) when the invariants fail for predicate count k.
  void validate(int k) const;
  Formula to_formula(const std::string& var = "x") const;
};

/// Canonical concrete syntax; parse_property(render(f)) == f.
std::string render(const Formula& f);

/// Parses the concrete grammar and checks symbols against `sig`. At most one
/// variable may be free.
Formula parse_property(const std::string& text, const Signature& sig);

}  // namespace typdeg::logic
