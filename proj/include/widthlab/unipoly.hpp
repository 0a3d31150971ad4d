#ifndef WIDTHLAB_UNIPOLY_HPP
#define WIDTHLAB_UNIPOLY_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "widthlab/errors.hpp"
#include "widthlab/rational.hpp"

namespace widthlab {

/// Dense univariate polynomial over a field F, coefficients lowest degree first.
/// The zero polynomial has no coefficients; otherwise the leading one is nonzero.
template <class F>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<F> coeffs) : c_(coeffs) { trim(); }

  static UniPoly constant(const F& c) { return UniPoly(std::vector<F>{c}); }
  static UniPoly monomial(const F& c, std::size_t k) {
    std::vector<F> v(k + 1, F(0));
    v[k] = c;
    return UniPoly(std::move(v));
  }
  static UniPoly x() { return monomial(F(1), 1); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<F>& coeffs() const { return c_; }
  F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
  const F& leading() const {
    if (c_.empty()) throw Error(ErrorKind::ZeroPolynomial, "leading coefficient of zero");
    return c_.back();
  }

  /// Multiplicity of the root 0.
  std::size_t low_order() const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == F(0)) ++k;
    return k;
  }
  /// Divides by X^k; the caller guarantees k <= low_order().
  UniPoly shifted_down(std::size_t k) const {
    if (k >= c_.size()) return UniPoly();
    return UniPoly(std::vector<F>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }
  UniPoly shifted_up(std::size_t k) const {
    if (c_.empty()) return UniPoly();
    std::vector<F> v(k, F(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return UniPoly(std::move(v));
  }

  F eval(const F& x) const {
    F acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// Horner evaluation in a ring T that F embeds into.
  template <class T>
  T eval_in(const T& x) const {
    T acc(F(0));
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + T(c_[i]);
    return acc;
  }

  UniPoly monic() const {
    if (c_.empty()) return *this;
    F inv = F(1) / c_.back();
    std::vector<F> v(c_.size(), F(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * inv;
    return UniPoly(std::move(v));
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<F> v(c_.size() - 1, F(0));
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * F(static_cast<long>(i));
    return UniPoly(std::move(v));
  }

  UniPoly operator-() const {
    std::vector<F> v(c_.size(), F(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
    return UniPoly(std::move(v));
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return UniPoly();
    std::vector<F> v(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == F(0)) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(v));
  }
  friend UniPoly operator*(const F& s, const UniPoly& p) {
    std::vector<F> v(p.c_.size(), F(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i) v[i] = s * p.c_[i];
    return UniPoly(std::move(v));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
  }

  std::vector<F> c_;
};

/// Euclidean division a = q*b + r with deg r < deg b.
template <class F>
std::pair<UniPoly<F>, UniPoly<F>> divmod(const UniPoly<F>& a, const UniPoly<F>& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {UniPoly<F>(), a};
  std::vector<F> rem = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<F> quo(rem.size() - db, F(0));
  F inv = F(1) / b.leading();
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i] == F(0)) continue;
    F q = rem[i] * inv;
    quo[i - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] = rem[i - db + j] - q * b.coeffs()[j];
  }
  rem.resize(db);
  return {UniPoly<F>(std::move(quo)), UniPoly<F>(std::move(rem))};
}

/// Monic gcd; gcd(0, 0) = 0.
template <class F>
UniPoly<F> gcd(UniPoly<F> a, UniPoly<F> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

template <class F>
std::string to_text(const UniPoly<F>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) s += ",";
    s += to_text(p.coeffs()[i]);
  }
  return s + "]";
}

}  // namespace widthlab

#endif  // WIDTHLAB_UNIPOLY_HPP
