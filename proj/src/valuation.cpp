#include "widthlab/valuation.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "widthlab/errors.hpp"
#include "widthlab/sampling.hpp"

namespace widthlab {

const Rational& ValuationValue::value() const {
  if (inf_) throw Error(ErrorKind::PreconditionViolation, "valuation of zero has no finite value");
  return v_;
}

ValuationValue operator+(const ValuationValue& a, const ValuationValue& b) {
  if (a.inf_ || b.inf_) return ValuationValue::infinity();
  return ValuationValue(Rational(a.v_ + b.v_));
}

ValuationValue ValuationValue::scaled(const Rational& s) const {
  if (inf_) {
    if (s <= 0) throw Error(ErrorKind::PreconditionViolation, "infinite valuation scaled by a non-positive factor");
    return *this;
  }
  return ValuationValue(Rational(v_ * s));
}

std::strong_ordering operator<=>(const ValuationValue& a, const ValuationValue& b) {
  if (a.inf_ || b.inf_) return static_cast<int>(a.inf_) <=> static_cast<int>(b.inf_);
  const int c = cmp(a.v_, b.v_);
  return c <=> 0;
}

std::string to_text(const ValuationValue& v) {
  if (v.is_infinite()) return "inf";
  const Rational& r = v.value();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

ValuationValue valuation_from_text(std::string_view text) {
  if (text == "inf") return ValuationValue::infinity();
  return ValuationValue(rational_from_text(text));
}

ValuationValue t_adic_valuation(const RationalFunction& x) {
  if (x.is_zero()) return ValuationValue::infinity();
  return ValuationValue(x.order_at_zero());
}

namespace {

long remove_factor(const Integer& n, const Integer& p) {
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

// t^v (c_0 + c_1 t + ...) + O(t^(v + |c|)) with c_0 != 0; an empty c only
// says the valuation is at least v.
struct Laurent {
  long v = 0;
  std::vector<Rational> c;
  bool zero = false;  // exact zero
};

Laurent make_laurent(long v, std::vector<Rational> c) {
  std::size_t k = 0;
  while (k < c.size() && c[k] == 0) ++k;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
  return {v + static_cast<long>(k), std::move(c), false};
}

Laurent to_laurent(const RationalFunction& x, std::size_t prec) {
  if (x.is_zero()) return {0, {}, true};
  const std::size_t a = x.num().low_order(), b = x.den().low_order();
  const QPoly n = x.num().shifted_down(a), d = x.den().shifted_down(b);
  const Rational d0_inv = 1 / d.coeff(0);
  std::vector<Rational> q(prec);
  for (std::size_t k = 0; k < prec; ++k) {
    Rational acc = n.coeff(k);
    for (std::size_t i = 1; i <= k && i < d.coeffs().size(); ++i) acc -= d.coeffs()[i] * q[k - i];
    q[k] = acc * d0_inv;
  }
  return make_laurent(static_cast<long>(a) - static_cast<long>(b), std::move(q));
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  if (a.zero || b.zero) return {0, {}, true};
  const std::size_t r = std::min(a.c.size(), b.c.size());
  std::vector<Rational> c(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; i + j < r; ++j) c[i + j] += a.c[i] * b.c[j];
  }
  return {a.v + b.v, std::move(c), false};
}

Laurent operator+(const Laurent& a, const Laurent& b) {
  if (a.zero) return b;
  if (b.zero) return a;
  const long top = std::min(a.v + static_cast<long>(a.c.size()), b.v + static_cast<long>(b.c.size()));
  const long v = std::min(a.v, b.v);
  if (top <= v) return {top, {}, false};
  std::vector<Rational> c(static_cast<std::size_t>(top - v));
  for (long e = v; e < top; ++e) {
    if (e >= a.v) c[static_cast<std::size_t>(e - v)] += a.c[static_cast<std::size_t>(e - a.v)];
    if (e >= b.v) c[static_cast<std::size_t>(e - v)] += b.c[static_cast<std::size_t>(e - b.v)];
  }
  return make_laurent(v, std::move(c));
}

Laurent operator-(Laurent a) {
  for (auto& x : a.c) x = -x;
  return a;
}

using LaurentVec = std::vector<Laurent>;

// rads[j] is the radicand of level j as a vector of 2^(j-1) series
LaurentVec lmul(const std::vector<LaurentVec>& rads, const LaurentVec& a, const LaurentVec& b) {
  if (a.size() == 1) return {a[0] * b[0]};
  const std::size_t h = a.size() / 2;
  const LaurentVec au(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(h)), av(a.begin() + static_cast<std::ptrdiff_t>(h), a.end());
  const LaurentVec bu(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(h)), bv(b.begin() + static_cast<std::ptrdiff_t>(h), b.end());
  std::size_t level = 0;
  while ((std::size_t{1} << level) < a.size()) ++level;
  LaurentVec uu = lmul(rads, au, bu), vv = lmul(rads, lmul(rads, av, bv), rads[level]);
  LaurentVec uv = lmul(rads, au, bv), vu = lmul(rads, av, bu);
  LaurentVec out(a.size());
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = uu[i] + vv[i];
    out[h + i] = uv[i] + vu[i];
  }
  return out;
}

// Valuation of the absolute norm of x, from t-adic expansions of growing
// precision. Only fully determined coefficients are read, so the answer is exact.
long norm_order(const std::vector<const TowerNode<RationalFunction>*>& chain, std::size_t level,
                const std::vector<RationalFunction>& x) {
  for (std::size_t prec = 16; prec <= (std::size_t{1} << 14); prec *= 2) {
    std::vector<LaurentVec> rads(level + 1);
    for (std::size_t j = 1; j <= level; ++j) {
      for (const auto& r : chain[j]->radicand()) rads[j].push_back(to_laurent(r, prec));
    }
    LaurentVec cur;
    for (const auto& r : x) cur.push_back(to_laurent(r, prec));
    while (cur.size() > 1) {
      const std::size_t h = cur.size() / 2;
      std::size_t lv = 0;
      while ((std::size_t{1} << lv) < cur.size()) ++lv;
      const LaurentVec u(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(h));
      const LaurentVec v(cur.begin() + static_cast<std::ptrdiff_t>(h), cur.end());
      LaurentVec uu = lmul(rads, u, u), dvv = lmul(rads, lmul(rads, v, v), rads[lv]);
      for (std::size_t i = 0; i < h; ++i) uu[i] = uu[i] + (-dvv[i]);
      cur = std::move(uu);
    }
    if (cur[0].zero) throw Error(ErrorKind::DivisionByZero, "norm of a nonzero element vanished");
    if (!cur[0].c.empty()) return cur[0].v;
  }
  throw Error(ErrorKind::PreconditionViolation, "t-adic expansion precision cap reached");
}

}  // namespace

ValuationValue p_adic_valuation(const Rational& x, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (x == 0) return ValuationValue::infinity();
  Integer pp(static_cast<unsigned long>(p));
  return ValuationValue(remove_factor(x.get_num(), pp) - remove_factor(x.get_den(), pp));
}

std::string to_text(LevelCertificate::Kind kind) {
  return kind == LevelCertificate::Kind::Ramified ? "ramified" : "validated_by_sampling";
}

// ------------------------------------------------------------- ValuationMap

template <class F>
ValuationMap<F> ValuationMap<F>::t_adic() {
  if constexpr (!std::is_same_v<F, RationalFunction>) {
    throw Error(ErrorKind::PreconditionViolation, "the t-adic valuation needs base Q(t)");
  } else {
    ValuationMap m;
    m.kind_ = ValuationKind::TAdic;
    m.tower_ = TowerNode<F>::base();
    m.chain_ = m.tower_->chain();
    return m;
  }
}

template <class F>
ValuationMap<F> ValuationMap<F>::p_adic(std::uint64_t p) {
  if constexpr (!std::is_same_v<F, Rational>) {
    throw Error(ErrorKind::PreconditionViolation, "p-adic valuations need base Q");
  } else {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    ValuationMap m;
    m.kind_ = ValuationKind::PAdic;
    m.p_ = p;
    m.tower_ = TowerNode<F>::base();
    m.chain_ = m.tower_->chain();
    return m;
  }
}

template <class F>
ValuationValue ValuationMap<F>::base(const F& x) const {
  if constexpr (std::is_same_v<F, RationalFunction>) {
    return t_adic_valuation(x);
  } else {
    return p_adic_valuation(x, p_);
  }
}

template <class F>
ValuationValue ValuationMap<F>::eval(std::size_t level, const std::vector<F>& c) const {
  if (level == 0) return base(c[0]);
  const std::size_t h = c.size() / 2;
  std::vector<F> u(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(h));
  std::vector<F> v(c.begin() + static_cast<std::ptrdiff_t>(h), c.end());
  const LevelCertificate& cert = certs_[level - 1];
  ValuationValue wu = eval(level - 1, u);
  ValuationValue wv = eval(level - 1, v);
  if (wv.is_infinite()) return wu;
  ValuationValue ws = wv + cert.omega_generator;
  if (wu != ws) return min(wu, ws);
  // equal valuations may cancel: use omega(N(x)) / [L:K]
  if constexpr (std::is_same_v<F, RationalFunction>) {
    const Integer degree = Integer(1) << static_cast<unsigned>(level);
    return ValuationValue(Rational(Rational(norm_order(chain_, level, c)) / Rational(degree)));
  }
  const TowerNode<F>* node = chain_[level];
  TowerElement<F> ue(node->parent(), std::move(u));
  TowerElement<F> ve(node->parent(), std::move(v));
  TowerElement<F> d(node->parent(), node->radicand());
  TowerElement<F> norm = ue * ue - d * ve * ve;
  return eval(level - 1, norm.coeffs()).scaled(Rational(1, 2));
}

template <class F>
ValuationValue ValuationMap<F>::operator()(const TowerElement<F>& x) const {
  if (!tower_->extends(*x.tower())) {
    throw Error(ErrorKind::NotCovered, "element lies outside the tower of this valuation");
  }
  return eval(x.depth(), x.coeffs());
}

template <class F>
ValuationMap<F> extend_to_tower(const ValuationMap<F>& base_val, const TowerHandle<F>& tower, std::uint64_t seed) {
  if (!tower->extends(*base_val.tower_)) {
    throw Error(ErrorKind::NotCovered, "tower does not extend the valuation's tower");
  }
  ValuationMap<F> m = base_val;
  m.tower_ = tower;
  m.chain_ = tower->chain();
  for (std::size_t j = base_val.tower_->depth() + 1; j <= tower->depth(); ++j) {
    const TowerNode<F>* node = m.chain_[j];
    ValuationValue wd = m.eval(j - 1, node->radicand());
    LevelCertificate cert;
    cert.omega_generator = wd.scaled(Rational(1, 2));
    // is omega(d)/2 outside 2^-g Z?
    Rational scaled = cert.omega_generator.value() * Rational(Integer(1) << m.g_);
    if (scaled.get_den() != 1) {
      cert.kind = LevelCertificate::Kind::Ramified;
      m.certs_.push_back(cert);
      m.g_ += 1;
      continue;
    }
    cert.kind = LevelCertificate::Kind::ValidatedBySampling;
    cert.samples = kValidationSamples;
    m.certs_.push_back(cert);
    // the value group may still have doubled; stay conservative
    m.g_ = static_cast<unsigned>(j);
    Prng rng(derive_seed(seed, j));
    TowerHandle<F> level = tower;
    while (level->depth() > j) level = level->parent();
    for (std::size_t i = 0; i < kValidationSamples; ++i) {
      TowerElement<F> x = random_validation_element(level, rng);
      TowerElement<F> y = (i % 3 == 0) ? x.conjugate() : random_validation_element(level, rng);
      ValuationValue wx = m(x), wy = m(y);
      ValuationValue wxy = m(x * y), ws = m(x + y);
      const bool additive = wxy == wx + wy;
      const bool ultra = ws >= min(wx, wy) && (wx == wy || ws == min(wx, wy));
      if (!additive || !ultra) {
        throw Error(ErrorKind::NonUniqueExtension,
                    "level " + std::to_string(j) + " fails validation at x=" + to_text(x) + " y=" + to_text(y));
      }
    }
  }
  return m;
}

template class ValuationMap<Rational>;
template class ValuationMap<RationalFunction>;
template ValuationMap<Rational> extend_to_tower(const ValuationMap<Rational>&, const TowerHandle<Rational>&,
                                                std::uint64_t);
template ValuationMap<RationalFunction> extend_to_tower(const ValuationMap<RationalFunction>&,
                                                        const TowerHandle<RationalFunction>&, std::uint64_t);

}  // namespace widthlab
