#pragma once

#include <climits>
#include <map>
#include <string>
#include <vector>

#include "typdeg/formula.hpp"
#include "typdeg/structure.hpp"

namespace typdeg::logic {

using structures::Structure;

/// Variable -> 0-based element.
using Assignment = std::map<std::string, int>;

/// A formula with variables resolved to slots, ready for repeated Tarskian
/// evaluation. Immutable after construction and safe to share across threads.
class Evaluator {
 public:
  explicit Evaluator(const Formula& f);

  const Formula& formula() const { return formula_; }
  bool is_property() const { return !free_variable_.empty(); }
  const std::string& free_variable() const { return free_variable_; }

  /// Throws Error(SignatureMismatch) if `m` lacks a symbol the formula uses.
  void check_structure(const Structure& m) const;

  /// Property at element `a` (or a sentence, ignoring `a`). No structure checks.
  bool holds_at(const structures::Structure& m, int a) const;
  bool holds(const structures::Structure& m) const { return holds_at(m, 0); }

  /// |phi(M)|, stopping early once `limit` witnesses are found.
  int count(const structures::Structure& m, int limit = INT_MAX) const;

 private:
  struct Node {
    Op op;
    int a = -1, b = -1;  // children
    int predicate = 0;   // 0-based
    int slot1 = 0, depth1 = 0, slot2 = 0, depth2 = 0;
    int bind = 0;        // slot bound by a quantifier
  };

  int build(const Formula& f, std::vector<std::pair<std::string, int>>& scope);
  bool eval(int i, const structures::Structure& m, int* env) const;

  Formula formula_;
  std::string free_variable_;
  std::vector<Node> nodes_;
  int root_ = 0;
  int slots_ = 1;  // slot 0 holds the free variable
  int max_predicate_ = 0;
  bool uses_edge_ = false;
  bool uses_function_ = false;
};

/// Standard first-order satisfaction; exists! means exactly one witness.
/// Throws Error(UnassignedVariable) when a free variable is missing from
/// `assignment` and Error(SignatureMismatch) when `m` lacks a used symbol.
bool evaluate(const Formula& f, const Structure& m, const Assignment& assignment);

/// |phi(M)|. Requires exactly one free variable.
int extension_size(const Formula& f, const Structure& m);

enum class Typicality { Typical, Atypical, Neutral };
const char* to_string(Typicality t);

/// Typical iff |phi(M)| > n/2, atypical iff < n/2, neutral iff = n/2.
Typicality classify(const Formula& f, const Structure& m);

/// Semantic form of phi^(m): at least `mcount` witnesses.
bool satisfies_at_least(const Formula& f, const Structure& m, int mcount);

}  // namespace typdeg::logic
