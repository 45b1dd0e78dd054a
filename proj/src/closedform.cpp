#include "typdeg/closedform.hpp"

#include <mpfr.h>

#include "typdeg/catalog.hpp"
#include "typdeg/combinatorics.hpp"
#include "typdeg/error.hpp"

namespace typdeg::closedform {

using combinatorics::binomial;
using degrees::DegreeReport;
using degrees::Kind;

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::OutOfRange, message);
}

ExactInteger ipow(long base, long exponent) { return pow(ExactInteger(base), static_cast<unsigned long>(exponent)); }

// Number of structures whose extension has exactly j elements.
using SizeCount = ExactInteger (*)(int n, int j);

ExactInteger moved_exactly(int n, int j) { return binomial(n, j) * ipow(n - 1, j); }
ExactInteger fixed_exactly(int n, int j) { return binomial(n, j) * ipow(n - 1, n - j); }
ExactInteger subset_of_size(int n, int j) { return binomial(n, j); }

ExactInteger sum_sizes(SizeCount count, int n, int from, int to) {
  ExactInteger total = 0;
  for (int j = std::max(from, 0); j <= to; ++j) total += count(n, j);
  return total;
}

ExactInteger favorable_for(SizeCount count, int n, Kind kind, int m) {
  switch (kind) {
    case Kind::Typ: return sum_sizes(count, n, n / 2 + 1, n);
    case Kind::Ntr: return count(n, n / 2);
    case Kind::MuAtLeast: return sum_sizes(count, n, m, n);
    case Kind::Mu: break;
  }
  throw Error(ErrorKind::FreeVariable, "truth probability of a property needs a witness count");
}

}  // namespace

ExactRational mu_no_fixed_points(int n) {
  require(n >= 1, "mu_no_fixed_points needs n >= 1");
  return make_rational(ipow(n - 1, n), ipow(n, n));
}

ExactInteger typ_count_no_fixed_points(int n) {
  require(n >= 1, "typ_count_no_fixed_points needs n >= 1");
  return sum_sizes(moved_exactly, n, n / 2 + 1, n);
}

ExactInteger ntr_count_no_fixed_points(int two_n) {
  require(two_n >= 2 && two_n % 2 == 0, "ntr_count_no_fixed_points needs an even size >= 2");
  const int half = two_n / 2;
  return binomial(two_n, half) * ipow(two_n - 1, half);
}

ExactRational mu_unary_at_least(int n, int m) {
  require(n >= 1 && m >= 0, "mu_unary_at_least needs n >= 1 and m >= 0");
  ExactInteger below = 0;
  for (int i = 0; i < m && i <= n; ++i) below += binomial(n, i);
  ExactRational out = 1 - make_rational(below, pow2(n));
  out.canonicalize();
  return out;
}

BoundPair fixed_point_mu_bounds(int n, int m) {
  require(m >= 1 && m <= n, "fixed_point_mu_bounds needs 1 <= m <= n");
  const ExactInteger total = ipow(n, n);
  return {make_rational(binomial(n, m) * ipow(n - 1, n - m), total),
          make_rational(binomial(n, m) * ipow(n, n - m), total)};
}

ExactRational graph_witness_bound(int n, GraphWitness which, int k) {
  require(n >= 2, "graph_witness_bound needs n >= 2");
  const ExactInteger denominator = pow2(n - 1);
  switch (which) {
    case GraphWitness::Isolated:
    case GraphWitness::AllAdjacent:
      return make_rational(n, denominator);
    case GraphWitness::ExactlyK:
      require(k >= 1, "graph_witness_bound needs k >= 1");
      return make_rational(n * binomial(n - 1, k), denominator);
  }
  return 0;
}

ExactInteger disjoint_pair_count(int q) {
  require(q >= 0, "disjoint_pair_count needs q >= 0");
  return ipow(3, q) - pow2(q + 1) + 1;
}

EulerFactors euler_factor_terms(int n) {
  require(n >= 2, "euler_factor_terms needs n >= 2");
  EulerFactors out;
  out.b = make_rational(ipow(n - 1, n), ipow(n, n));
  out.c = 0;
  for (int k = 0; 2 * k < n; ++k) out.c += make_rational(binomial(n, k), ipow(n - 1, k));
  out.c.canonicalize();
  return out;
}

ExactRational unary_p1_typ_degree(int n) {
  require(n >= 1, "unary_p1_typ_degree needs n >= 1");
  return make_rational(sum_sizes(subset_of_size, n, n / 2 + 1, n), pow2(n));
}

NeutralityBound no_fixed_points_ntr_bound(int half) {
  require(half >= 1, "no_fixed_points_ntr_bound needs n >= 1");
  const int two_n = 2 * half;
  NeutralityBound out;
  out.degree = make_rational(ntr_count_no_fixed_points(two_n), ipow(two_n, two_n));

  mpfr_t x, y;
  mpfr_init2(x, 128);
  mpfr_init2(y, 128);
  mpfr_const_pi(x, MPFR_RNDN);
  mpfr_mul_ui(x, x, static_cast<unsigned long>(half), MPFR_RNDN);
  mpfr_sqrt(x, x, MPFR_RNDN);
  mpfr_set_ui(y, static_cast<unsigned long>(half), MPFR_RNDN);
  mpfr_pow_ui(y, y, static_cast<unsigned long>(half), MPFR_RNDN);
  mpfr_mul(x, x, y, MPFR_RNDN);
  mpfr_set_ui_2exp(y, 1, half, MPFR_RNDN);
  mpfr_div(x, y, x, MPFR_RNDN);
  out.bound = mpfr_get_d(x, MPFR_RNDN);

  // degree <= bound  <=>  pi <= 4^n / (degree^2 n^(2n+1)); compare pi from both sides.
  ExactRational ratio = make_rational(pow2(2 * half), ipow(half, 2 * half + 1));
  ratio /= out.degree * out.degree;
  for (mpfr_prec_t prec = 128;; prec *= 2) {
    mpfr_set_prec(x, prec);
    mpfr_const_pi(x, MPFR_RNDU);
    if (mpfr_cmp_q(x, ratio.get_mpq_t()) <= 0) {
      out.holds = true;
      break;
    }
    mpfr_const_pi(x, MPFR_RNDD);
    if (mpfr_cmp_q(x, ratio.get_mpq_t()) > 0) {
      out.holds = false;
      break;
    }
  }
  mpfr_clear(x);
  mpfr_clear(y);
  return out;
}

ExactRational moved_at_least_overcount(int n, int m) {
  require(n >= 1 && m >= 0 && m <= n, "moved_at_least_overcount needs 0 <= m <= n");
  ExactInteger total = 0;
  for (int i = m; i <= n; ++i) total += ipow(n, i);
  return make_rational(total, ipow(n, n));
}

ExactRational basic_typ_upper_curve(int n, int p) {
  require(n >= 1 && p >= 2, "basic_typ_upper_curve needs n >= 1 and p >= 2");
  ExactInteger total = 0;
  for (int i = 0; 2 * i < n; ++i) {
    total += binomial(n, i) * combinatorics::falling_factorial(pow2(i), static_cast<unsigned long>(p));
  }
  return make_rational(total, pow2(static_cast<unsigned long>(p) * n));
}

std::optional<DegreeReport> lookup(const structures::Space& space, const logic::Formula& f, Kind kind, int m) {
  const int n = space.n;
  if (n < 1) return std::nullopt;
  if (kind == Kind::Ntr && n % 2 != 0) {
    throw Error(ErrorKind::OutOfRange, "neutrality is defined for even n only (got n=" + std::to_string(n) + ")");
  }
  if (kind == Kind::MuAtLeast && m < 0) throw Error(ErrorKind::OutOfRange, "witness count must be non-negative");
  auto hit = catalog::recognize(f, space.sig);
  if (!hit) return std::nullopt;

  const Convention conv = space.effective_convention();
  auto report = [&](const ExactInteger& favorable, const ExactInteger& total) {
    return degrees::make_report(kind, n, favorable, total, degrees::Method::ClosedForm, conv, space.sig,
                                logic::render(f), kind == Kind::MuAtLeast ? m : 0);
  };

  switch (hit->which) {
    case catalog::Builtin::NoFixedPoint:
      if (kind != Kind::Mu) return std::nullopt;
      return report(ipow(n - 1, n), ipow(n, n));
    case catalog::Builtin::NotFixed:
      if (kind == Kind::Mu) return std::nullopt;
      return report(favorable_for(moved_exactly, n, kind, m), ipow(n, n));
    case catalog::Builtin::Fixed:
      if (kind == Kind::Mu) return std::nullopt;
      return report(favorable_for(fixed_exactly, n, kind, m), ipow(n, n));
    case catalog::Builtin::Basic: {
      if (conv != Convention::Free || hit->basic.indices.size() != 1 || kind == Kind::Mu) return std::nullopt;
      // The other k-1 predicates are unconstrained: a factor 2^((k-1)n) on both sides.
      const ExactInteger spare = pow2(static_cast<unsigned long>(space.sig.k() - 1) * n);
      return report(favorable_for(subset_of_size, n, kind, m) * spare, pow2(static_cast<unsigned long>(n)) * spare);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace typdeg::closedform
