#include "typdeg/exact.hpp"

#include <mpfr.h>

#include "typdeg/error.hpp"

namespace typdeg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Arity: return "arity";
    case ErrorKind::UnknownSymbol: return "unknown-symbol";
    case ErrorKind::FreeVariable: return "free-variable";
    case ErrorKind::SignatureMismatch: return "signature-mismatch";
    case ErrorKind::UnassignedVariable: return "unassigned-variable";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Io: return "io";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

ExactRational make_rational(const ExactInteger& num, const ExactInteger& den) {
  if (den == 0) throw Error(ErrorKind::OutOfRange, "rational with zero denominator");
  ExactRational r(num, den);
  r.canonicalize();
  return r;
}

ExactInteger pow(const ExactInteger& base, unsigned long exponent) {
  ExactInteger out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

ExactInteger pow2(unsigned long exponent) {
  ExactInteger out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, exponent);
  return out;
}

double to_double(const ExactRational& value) {
  // Precision 53 with the exponent range of binary64, then subnormalize so that
  // tiny values round once, not twice.
  mpfr_exp_t old_emin = mpfr_get_emin();
  mpfr_exp_t old_emax = mpfr_get_emax();
  mpfr_set_emin(-1073);
  mpfr_set_emax(1024);
  mpfr_t x;
  mpfr_init2(x, 53);
  int inex = mpfr_set_q(x, value.get_mpq_t(), MPFR_RNDN);
  inex = mpfr_check_range(x, inex, MPFR_RNDN);
  mpfr_subnormalize(x, inex, MPFR_RNDN);
  double out = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  mpfr_set_emin(old_emin);
  mpfr_set_emax(old_emax);
  return out;
}

double to_double(const ExactInteger& value) { return to_double(ExactRational(value)); }

std::string to_fraction_string(const ExactRational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

ExactRational parse_fraction(const std::string& text) {
  auto slash = text.find('/');
  ExactInteger num, den = 1;
  try {
    if (slash == std::string::npos) {
      num = ExactInteger(text);
    } else {
      num = ExactInteger(text.substr(0, slash));
      den = ExactInteger(text.substr(slash + 1));
    }
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::Usage, "malformed fraction '" + text + "'");
  }
  return make_rational(num, den);
}

std::size_t bit_length(const ExactInteger& value) {
  if (value == 0) return 0;
  return mpz_sizeinbase(value.get_mpz_t(), 2);
}

std::uint64_t to_u64(const ExactInteger& value) {
  if (value < 0 || bit_length(value) > 64) {
    throw Error(ErrorKind::OutOfRange, "integer " + value.get_str() + " does not fit in 64 bits");
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, value.get_mpz_t());
  return out;
}

}  // namespace typdeg
