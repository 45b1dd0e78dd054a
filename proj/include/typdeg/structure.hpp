#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "typdeg/exact.hpp"
#include "typdeg/rng.hpp"
#include "typdeg/signature.hpp"

namespace typdeg::structures {

/// The labeled structure space S_n(L) under a counting convention.
struct Space {
  Signature sig;
  int n;
  Convention conv = Convention::Free;

  /// Convention that actually applies (non-unary families are always free).
  Convention effective_convention() const {
    return sig.family() == Family::UnaryPredicates ? conv : Convention::Free;
  }
};

/// A finite labeled structure on {1..n}. Elements are addressed 0-based in the
/// C++ API: element i stands for universe member i+1.
class Structure {
 public:
  static Structure unary_from_sets(int n, const std::vector<std::vector<int>>& sets);
  /// table[i] is the image of element i (0-based).
  static Structure function_from_table(const std::vector<int>& table);
  static Structure graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  Family family() const { return family_; }
  int n() const { return n_; }
  /// Predicate count (unary family only).
  int k() const { return k_; }

  bool in_predicate(int pred, int element) const {
    const std::uint64_t* row = words_.data() + static_cast<std::size_t>(pred) * row_words_;
    return (row[element >> 6] >> (element & 63)) & 1U;
  }
  int apply(int element) const { return static_cast<int>(table_[static_cast<std::size_t>(element)]); }
  bool adjacent(int a, int b) const {
    const std::uint64_t* row = words_.data() + static_cast<std::size_t>(a) * row_words_;
    return (row[b >> 6] >> (b & 63)) & 1U;
  }

  /// 0-based members of predicate `pred` (unary family).
  std::vector<int> predicate_members(int pred) const;
  const std::vector<std::uint32_t>& table() const { return table_; }
  /// Edges (a, b) with a < b, in lexicographic pair order.
  std::vector<std::pair<int, int>> edges() const;
  /// Bit for the pair with lexicographic rank `pair_index`.
  bool pair_bit(std::size_t pair_index) const;

  friend bool operator==(const Structure& a, const Structure& b);
  std::size_t hash() const;

 private:
  friend class StructureBuilder;

  Structure(Family family, int n, int k);
  void set_member(int pred, int element);
  void set_edge(int a, int b);
  void clear_payload();

  Family family_;
  int n_;
  int k_ = 0;
  std::size_t row_words_ = 0;
  // Unary: k rows of membership bits. Graph: n adjacency rows (derived from the
  // pair bitset; symmetric and irreflexive by construction).
  std::vector<std::uint64_t> words_;
  std::vector<std::uint32_t> table_;
};

/// Number of unordered pairs, C(n, 2).
std::size_t pair_count(int n);
/// Lexicographic rank of the pair (a, b), a < b, among pairs of {0..n-1}.
std::size_t pair_rank(int n, int a, int b);

/// |S_n(L)|: unary/free 2^(kn); unary/paper-distinct (2^n - 2)_k;
/// function n^n; graph 2^C(n,2). Throws Error(Infeasible) when paper-distinct
/// has fewer than k candidate subsets.
ExactInteger structure_count(const Space& space);

/// Index bijection [0, structure_count) -> S_n(L).
///   unary free: k*n-bit integer, predicate-major (bits [i*n, i*n+n) hold W_{i+1}).
///   unary paper-distinct: mixed radix over the proper nonempty subsets, with
///     W_k the most significant digit; order agrees with filtering free indices.
///   function: base-n digits, digit i is the 0-based image of element i.
///   graph: C(n,2)-bit integer, bit r is the pair of lexicographic rank r.
Structure decode_structure(const Space& space, const ExactInteger& index);

/// Inverse of decode_structure.
ExactInteger encode_structure(const Space& space, const Structure& m);

/// Streams decode_structure(i) for i in [begin, end), in order. Reuses one
/// Structure buffer; the reference from current() is valid until next().
class Enumerator {
 public:
  Enumerator(const Space& space, std::uint64_t begin, std::uint64_t end);
  ~Enumerator();
  Enumerator(Enumerator&&) noexcept;
  Enumerator& operator=(Enumerator&&) noexcept;

  /// Advances to the next structure; false once the range is exhausted.
  bool next();
  const Structure& current() const;
  /// Index of current() in the structure space.
  std::uint64_t index() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// structure_count as a 64-bit value; throws Error(CapExceeded) when it does
/// not fit (such spaces are not enumerable anyway).
std::uint64_t enumerable_count(const Space& space);

/// Uniform draw from S_n(L). Paper-distinct rejects empty, full and duplicate
/// subsets; more than 10^6 rejections raise Error(Infeasible).
Structure sample_structure(const Space& space, Rng& rng);

struct Atom {
  std::vector<int> signs;     // e(1..k), each 0 or 1
  std::vector<int> elements;  // 0-based members of X_e
};

/// All 2^k cells X_e = W_1^{e(1)} ∩ ... ∩ W_k^{e(k)}, e in increasing binary
/// order with e(1) most significant. Throws Error(SignatureMismatch) for
/// non-unary structures.
std::vector<Atom> predicate_atoms(const Structure& m);

}  // namespace typdeg::structures
