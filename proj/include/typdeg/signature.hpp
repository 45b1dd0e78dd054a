#pragma once

#include <string>

namespace typdeg {

enum class Family { UnaryPredicates, UnaryFunction, Graph };

/// Which of the three languages a structure interprets: {U1..Uk}, {F} or {E}.
class Signature {
 public:
  static Signature unary(int k);
  static Signature function();
  static Signature graph();

  /// "unary:k", "function" or "graph".
  static Signature parse(const std::string& text);

  Family family() const { return family_; }
  /// Predicate count; 0 for the non-unary families.
  int k() const { return k_; }

  std::string to_string() const;
  /// "unary", "function" or "graph".
  const char* family_name() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  Signature(Family family, int k) : family_(family), k_(k) {}

  Family family_;
  int k_;
};

/// Counting convention for the unary family; other families ignore it.
///   Free: all k-tuples of subsets.
///   PaperDistinct: k-tuples of pairwise-distinct subsets, none empty or full.
enum class Convention { Free, PaperDistinct };

const char* to_string(Convention conv);
Convention parse_convention(const std::string& text);

}  // namespace typdeg
