#include "typdeg/combinatorics.hpp"

#include <cmath>
#include <mpfr.h>

#include "typdeg/error.hpp"

namespace typdeg::combinatorics {

ExactInteger binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  ExactInteger out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

ExactInteger falling_factorial(const ExactInteger& n, unsigned long k) {
  if (n < 0) throw Error(ErrorKind::OutOfRange, "falling factorial of a negative number");
  if (n < k) return 0;
  ExactInteger out = 1;
  for (unsigned long i = 0; i < k; ++i) out *= n - i;
  return out;
}

ExactInteger falling_factorial(unsigned long n, unsigned long k) {
  return falling_factorial(ExactInteger(n), k);
}

ExactInteger factorial(unsigned long n) {
  ExactInteger out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

ExactInteger stirling2(unsigned long n, unsigned long k) {
  ExactInteger sum = 0;
  for (unsigned long i = 0; i <= k; ++i) {
    ExactInteger term = binomial(k, i) * pow(ExactInteger(i), n);
    if ((k - i) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  ExactInteger kfact = factorial(k);
  if (!mpz_divisible_p(sum.get_mpz_t(), kfact.get_mpz_t())) {
    throw Error(ErrorKind::Internal, "alternating sum for {" + std::to_string(n) + " brace " +
                                         std::to_string(k) + "} is not divisible by k!");
  }
  ExactInteger out;
  mpz_divexact(out.get_mpz_t(), sum.get_mpz_t(), kfact.get_mpz_t());
  return out;
}

ExactInteger half_binomial_sum(unsigned long n) {
  if (n == 0) throw Error(ErrorKind::OutOfRange, "half_binomial_sum requires n >= 1");
  ExactInteger sum = 0;
  for (unsigned long k = 0; 2 * k < n; ++k) sum += binomial(n, k);
  return sum;
}

namespace {

// Sign of C(2n,n) * sqrt(pi n) - 4^n, settled by interval arithmetic with
// growing precision. The difference is never zero (pi is irrational).
int compare_central_with_power(const ExactInteger& central, unsigned long n) {
  ExactInteger four_n = pow2(2 * n);
  for (mpfr_prec_t prec = static_cast<mpfr_prec_t>(2 * n + 128);; prec *= 2) {
    mpfr_t lo, hi;
    mpfr_inits2(prec, lo, hi, static_cast<mpfr_ptr>(nullptr));
    // lo <= C(2n,n) sqrt(pi n) <= hi
    mpfr_const_pi(lo, MPFR_RNDD);
    mpfr_mul_ui(lo, lo, n, MPFR_RNDD);
    mpfr_sqrt(lo, lo, MPFR_RNDD);
    mpfr_mul_z(lo, lo, central.get_mpz_t(), MPFR_RNDD);
    mpfr_const_pi(hi, MPFR_RNDU);
    mpfr_mul_ui(hi, hi, n, MPFR_RNDU);
    mpfr_sqrt(hi, hi, MPFR_RNDU);
    mpfr_mul_z(hi, hi, central.get_mpz_t(), MPFR_RNDU);
    int result = 0;
    if (mpfr_cmp_z(hi, four_n.get_mpz_t()) < 0) {
      result = -1;
    } else if (mpfr_cmp_z(lo, four_n.get_mpz_t()) > 0) {
      result = 1;
    }
    mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
    if (result != 0) return result;
  }
}

}  // namespace

CentralBinomialCheck central_binomial_within_bound(unsigned long n) {
  if (n == 0) throw Error(ErrorKind::OutOfRange, "central binomial bound requires n >= 1");
  CentralBinomialCheck out;
  out.value = binomial(2 * n, n);

  mpfr_t b;
  mpfr_init2(b, 53);
  mpfr_t num;
  mpfr_init2(num, 128);
  mpfr_const_pi(num, MPFR_RNDN);
  mpfr_mul_ui(num, num, n, MPFR_RNDN);
  mpfr_sqrt(num, num, MPFR_RNDN);
  mpfr_ui_pow_ui(b, 4, n, MPFR_RNDN);
  mpfr_t wide;
  mpfr_init2(wide, 128);
  mpfr_ui_pow_ui(wide, 4, n, MPFR_RNDN);
  mpfr_div(b, wide, num, MPFR_RNDN);
  out.bound = mpfr_get_d(b, MPFR_RNDN);
  mpfr_clears(b, num, wide, static_cast<mpfr_ptr>(nullptr));

  out.holds = compare_central_with_power(out.value, n) < 0;
  return out;
}

}  // namespace typdeg::combinatorics
