#ifndef WIDTHLAB_RATIONAL_HPP
#define WIDTHLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace widthlab {

using Integer = mpz_class;
/// Elements of Q. mpq_class keeps gcd(num, den) = 1 and den > 0 after every operation.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

std::string to_text(const Integer& x);
/// "n" for integers, "n/d" otherwise.
std::string to_text(const Rational& x);
Rational rational_from_text(std::string_view text);

Rational pow(const Rational& x, unsigned long k);
Rational pow(const Rational& x, long k);
Integer floor(const Rational& x);
Integer ceil(const Rational& x);

std::optional<Integer> exact_sqrt(const Integer& x);
std::optional<Rational> exact_sqrt(const Rational& x);

// Outward-rounded k-th roots of a nonnegative rational. The results are dyadic
// rationals and satisfy lower^k <= a <= upper^k exactly; `bits` controls
// the relative width (about 2^-bits).
Rational root_lower(const Rational& a, unsigned long k, unsigned bits);
Rational root_upper(const Rational& a, unsigned long k, unsigned bits);

/// Rounds x down (or up) to a dyadic with `bits` significant bits.
Rational round_down(const Rational& x, unsigned bits);
Rational round_up(const Rational& x, unsigned bits);

bool is_prime(std::uint64_t n);

/// Decimal rendering with `digits` significant digits, rounded down or up.
std::string decimal_text(const Rational& x, int digits, bool round_up);

}  // namespace widthlab

#endif  // WIDTHLAB_RATIONAL_HPP
