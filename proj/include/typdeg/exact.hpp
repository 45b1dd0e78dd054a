#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace typdeg {

// GMP handles the arbitrary-precision arithmetic. Rationals produced by this
// library are always canonical (lowest terms, positive denominator).
using ExactInteger = mpz_class;
using ExactRational = mpq_class;

/// num/den in lowest terms. Throws Error(OutOfRange) when den == 0.
ExactRational make_rational(const ExactInteger& num, const ExactInteger& den);

ExactInteger pow(const ExactInteger& base, unsigned long exponent);
ExactInteger pow2(unsigned long exponent);

/// Round-to-nearest-even conversion to binary64.
double to_double(const ExactRational& value);
double to_double(const ExactInteger& value);

/// "p/q", always with an explicit denominator.
std::string to_fraction_string(const ExactRational& value);

/// Parses "p/q" or a plain integer. Throws Error(Usage) on malformed input.
ExactRational parse_fraction(const std::string& text);

/// Number of bits needed to represent |value| (0 for zero).
std::size_t bit_length(const ExactInteger& value);

/// Lossless conversion; throws Error(OutOfRange) if value does not fit.
std::uint64_t to_u64(const ExactInteger& value);

}  // namespace typdeg
