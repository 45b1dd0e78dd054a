#pragma once

#include <optional>

#include "typdeg/degrees.hpp"
#include "typdeg/exact.hpp"
#include "typdeg/formula.hpp"
#include "typdeg/structure.hpp"

namespace typdeg::closedform {

/// Lower/upper bounds. An upper bound above 1 is kept as is and flagged.
struct BoundPair {
  ExactRational lower;
  ExactRational upper;

  bool vacuous() const { return upper > 1; }
};

/// (n-1)^n / n^n: the probability that a random F has no fixed point.
ExactRational mu_no_fixed_points(int n);

/// Functions on n points moving more than n/2 of them:
///   sum_{m > n/2} C(n, m) (n-1)^m.
ExactInteger typ_count_no_fixed_points(int n);

/// Functions on 2n points moving exactly n of them: C(2n, n) (2n-1)^n.
/// `two_n` must be even and positive.
ExactInteger ntr_count_no_fixed_points(int two_n);

/// Probability that a random subset of an n-set has at least m elements:
///   1 - sum_{i<m} C(n, i) / 2^n.
ExactRational mu_unary_at_least(int n, int m);

/// Bounds on the probability of at least m fixed points, 1 <= m <= n:
///   C(n,m)(n-1)^(n-m)/n^n <= mu <= C(n,m) n^(n-m)/n^n.
BoundPair fixed_point_mu_bounds(int n, int m);

enum class GraphWitness { Isolated, AllAdjacent, ExactlyK };

/// Union bound on the probability that some node witnesses the property:
/// n/2^(n-1) (isolated, all-adjacent) or n C(n-1,k)/2^(n-1) (exactly k).
/// Values above 1 are returned verbatim; k > n-1 gives 0.
ExactRational graph_witness_bound(int n, GraphWitness which, int k = 0);

/// Ordered pairs of disjoint nonempty subsets of a q-set: 3^q - 2^(q+1) + 1.
ExactInteger disjoint_pair_count(int q);

struct EulerFactors {
  ExactRational b;  // ((n-1)/n)^n
  ExactRational c;  // sum_{k<n/2} C(n,k)/(n-1)^k
};

/// b*c equals typ_count_no_fixed_points(n)/n^n. Requires n >= 2.
EulerFactors euler_factor_terms(int n);

/// Typicality degree of a single signed predicate under free counting:
///   sum_{m > n/2} C(n, m) / 2^n.
ExactRational unary_p1_typ_degree(int n);

struct NeutralityBound {
  ExactRational degree;  // C(2n,n)(2n-1)^n / (2n)^(2n)
  double bound;          // 2^n / (n^n sqrt(pi n))
  bool holds;            // decided in high precision
};

/// Neutrality degree of F(x) != x on 2n points against its central-binomial
/// bound. `half` is n >= 1.
NeutralityBound no_fixed_points_ntr_bound(int half);

/// Diagnostic only: sum_{m<=i<=n} n^i / n^n. This counts functions by fixed
/// sets with overlaps, so it is an over-count (always >= 1).
ExactRational moved_at_least_overcount(int n, int m);

/// Diagnostic upper curve for a signed conjunction of p >= 2 predicates:
///   (1/2^(pn)) sum_{i<n/2} C(n, i) (2^i)_p.
/// Asymptotic only; not a bound at every n.
ExactRational basic_typ_upper_curve(int n, int p);

/// Exact value from a registered closed form when `f` is one of the catalog
/// properties with a known count under (sig, conv). `m` is used for MuAtLeast.
std::optional<degrees::DegreeReport> lookup(const structures::Space& space, const logic::Formula& f,
                                            degrees::Kind kind, int m = 0);

}  // namespace typdeg::closedform
