#include "widthlab/rational_function.hpp"

#include <string>
#include <vector>

#include "widthlab/errors.hpp"

namespace widthlab {

namespace {

// Monic t^k? Returns k, or -1.
int monomial_power(const QPoly& p) {
  if (p.is_zero() || p.leading() != 1) return -1;
  const auto& c = p.coeffs();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (c[i] != 0) return -1;
  }
  return p.degree();
}

QPoly exact_quotient(const QPoly& a, const QPoly& b) {
  auto [q, r] = divmod(a, b);
  return q;
}

}  // namespace

std::optional<QPoly> exact_sqrt(const QPoly& p) {
  if (p.is_zero()) return QPoly();
  if (p.degree() % 2 != 0) return std::nullopt;
  auto lead_root = exact_sqrt(p.leading());
  if (!lead_root) return std::nullopt;
  const std::size_t m = static_cast<std::size_t>(p.degree() / 2);
  QPoly monic = p.monic();
  // match coefficients of X^(2m-k), k = 1..m, top down
  std::vector<Rational> q(m + 1, Rational(0));
  q[m] = 1;
  for (std::size_t k = 1; k <= m; ++k) {
    Rational acc = monic.coeff(2 * m - k);
    for (std::size_t i = m - k + 1; i < m; ++i) {
      const std::size_t j = 2 * m - k - i;
      if (j > m - k && j < m) acc -= q[i] * q[j];
    }
    q[m - k] = acc / 2;
  }
  QPoly root(std::move(q));
  if (root * root != monic) return std::nullopt;
  return *lead_root * root;
}

RationalFunction::RationalFunction(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = QPoly::constant(Rational(1));
    return;
  }
  if (den_.leading() != 1) {
    Rational inv = 1 / den_.leading();
    num_ = inv * num_;
    den_ = inv * den_;
  }
  const std::size_t shift = std::min(num_.low_order(), den_.low_order());
  if (shift > 0) {
    num_ = num_.shifted_down(shift);
    den_ = den_.shifted_down(shift);
  }
  if (den_.degree() == 0 || monomial_power(den_) >= 0) return;
  QPoly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = exact_quotient(num_, g);
    den_ = exact_quotient(den_, g);
  }
}

RationalFunction RationalFunction::t_power(long k) {
  if (k >= 0) return RationalFunction(QPoly::monomial(Rational(1), static_cast<std::size_t>(k)));
  return RationalFunction(Raw{}, QPoly::constant(Rational(1)),
                          QPoly::monomial(Rational(1), static_cast<std::size_t>(-k)));
}

long RationalFunction::order_at_zero() const {
  return static_cast<long>(num_.low_order()) - static_cast<long>(den_.low_order());
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero in Q(t)");
  Rational lc = num_.leading();
  Rational inv = 1 / lc;
  // den/num is already reduced; only the monic normalization changes
  return RationalFunction(Raw{}, inv * den_, inv * num_);
}

RationalFunction RationalFunction::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  RationalFunction base = *this;
  RationalFunction acc(1);
  while (k > 0) {
    if (k & 1) acc *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return acc;
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(Raw{}, -num_, den_); }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  const int ka = monomial_power(a.den_);
  const int kb = monomial_power(b.den_);
  if (ka >= 0 && kb >= 0) {
    const int k = std::max(ka, kb);
    QPoly n = a.num_.shifted_up(static_cast<std::size_t>(k - ka)) +
              b.num_.shifted_up(static_cast<std::size_t>(k - kb));
    return RationalFunction(std::move(n), QPoly::monomial(Rational(1), static_cast<std::size_t>(k)));
  }
  QPoly g = gcd(a.den_, b.den_);
  QPoly bd = exact_quotient(b.den_, g);
  QPoly ad = exact_quotient(a.den_, g);
  return RationalFunction(a.num_ * bd + b.num_ * ad, a.den_ * bd);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction();
  if (a.is_constant()) return RationalFunction(RationalFunction::Raw{}, a.num_.leading() * b.num_, b.den_);
  if (b.is_constant()) return RationalFunction(RationalFunction::Raw{}, b.num_.leading() * a.num_, a.den_);
  const int ka = monomial_power(a.den_);
  const int kb = monomial_power(b.den_);
  if (ka >= 0 && kb >= 0) return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  QPoly g1 = gcd(a.num_, b.den_);
  QPoly g2 = gcd(b.num_, a.den_);
  QPoly n1 = g1.degree() > 0 ? exact_quotient(a.num_, g1) : a.num_;
  QPoly d2 = g1.degree() > 0 ? exact_quotient(b.den_, g1) : b.den_;
  QPoly n2 = g2.degree() > 0 ? exact_quotient(b.num_, g2) : b.num_;
  QPoly d1 = g2.degree() > 0 ? exact_quotient(a.den_, g2) : a.den_;
  return RationalFunction(RationalFunction::Raw{}, n1 * n2, d1 * d2);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

std::optional<RationalFunction> exact_sqrt(const RationalFunction& x) {
  if (x.is_zero()) return x;
  auto n = exact_sqrt(x.num());
  if (!n) return std::nullopt;
  auto d = exact_sqrt(x.den());
  if (!d) return std::nullopt;
  return RationalFunction(*n, *d);
}

std::string to_text(const RationalFunction& x) {
  if (x.den().degree() == 0) return to_text(x.num());
  return to_text(x.num()) + "/" + to_text(x.den());
}

namespace {

QPoly parse_coeff_list(std::string_view s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw Error(ErrorKind::ParseError, "expected coefficient list, got '" + std::string(s) + "'");
  }
  std::vector<Rational> c;
  std::string_view body = s.substr(1, s.size() - 2);
  while (!body.empty()) {
    auto comma = body.find(',');
    c.push_back(rational_from_text(body.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return QPoly(std::move(c));
}

}  // namespace

RationalFunction rational_function_from_text(std::string_view text) {
  auto slash = text.find("]/[");
  if (slash == std::string_view::npos) return RationalFunction(parse_coeff_list(text));
  return RationalFunction(parse_coeff_list(text.substr(0, slash + 1)),
                          parse_coeff_list(text.substr(slash + 2)));
}

}  // namespace widthlab
