#pragma once

#include "typdeg/exact.hpp"

namespace typdeg::combinatorics {

/// C(n, k); zero when k > n.
ExactInteger binomial(unsigned long n, unsigned long k);

/// (n)_k = n!/(n-k)!, the number of k-tuples of distinct elements of an n-set.
/// (n)_0 = 1 and (n)_k = 0 for k > n.
ExactInteger falling_factorial(const ExactInteger& n, unsigned long k);
ExactInteger falling_factorial(unsigned long n, unsigned long k);

ExactInteger factorial(unsigned long n);

/// Stirling number of the second kind from the alternating-sum formula
///   {n brace k} = (1/k!) * sum_{i=0..k} (-1)^(k-i) C(k,i) i^n.
/// Throws Error(Internal) if the sum is not divisible by k!.
ExactInteger stirling2(unsigned long n, unsigned long k);

/// sum of C(n, k) over all k with 2k < n. Requires n >= 1.
ExactInteger half_binomial_sum(unsigned long n);

struct CentralBinomialCheck {
  ExactInteger value;  // C(2n, n)
  double bound;        // 4^n / sqrt(pi n) rounded to binary64 (inf once it overflows)
  bool holds;          // decided in high precision, not from `bound`
};

/// C(2n, n) against 4^n / sqrt(pi n). Requires n >= 1.
CentralBinomialCheck central_binomial_within_bound(unsigned long n);

}  // namespace typdeg::combinatorics
