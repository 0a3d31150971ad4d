#ifndef WIDTHLAB_RATIONAL_FUNCTION_HPP
#define WIDTHLAB_RATIONAL_FUNCTION_HPP

#include <optional>
#include <string>
#include <string_view>

#include "widthlab/rational.hpp"
#include "widthlab/unipoly.hpp"

namespace widthlab {

using QPoly = UniPoly<Rational>;

std::optional<QPoly> exact_sqrt(const QPoly& p);

/// Element of Q(t) kept as num/den with gcd(num, den) = 1 and den monic.
class RationalFunction {
 public:
  RationalFunction() : den_(QPoly::constant(Rational(1))) {}
  RationalFunction(long c) : RationalFunction(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c)  // NOLINT(google-explicit-constructor)
      : num_(QPoly::constant(c)), den_(QPoly::constant(Rational(1))) {}
  RationalFunction(QPoly num, QPoly den);
  explicit RationalFunction(QPoly num) : RationalFunction(std::move(num), QPoly::constant(Rational(1))) {}

  static RationalFunction t() { return RationalFunction(QPoly::x()); }
  /// t^k for any integer k.
  static RationalFunction t_power(long k);

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// True if the value lies in Q.
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  /// Order of vanishing at t = 0 (negative for poles). Undefined for zero.
  long order_at_zero() const;

  RationalFunction inverse() const;
  RationalFunction pow(long k) const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

 private:
  struct Raw {};
  RationalFunction(Raw, QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  QPoly num_;
  QPoly den_;
};

std::optional<RationalFunction> exact_sqrt(const RationalFunction& x);

/// "[n0,n1,...]" when the denominator is 1, else "[n0,...]/[d0,...]".
std::string to_text(const RationalFunction& x);
RationalFunction rational_function_from_text(std::string_view text);

}  // namespace widthlab

#endif  // WIDTHLAB_RATIONAL_FUNCTION_HPP
