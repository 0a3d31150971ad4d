#include "widthlab/width.hpp"

#include <json.hpp>

#include <algorithm>
#include <string>
#include <type_traits>
#include <utility>

#include "widthlab/errors.hpp"
#include "widthlab/sampling.hpp"

namespace widthlab {

std::string to_text(GroupTag tag) {
  switch (tag) {
    case GroupTag::SL:
      return "SL";
    case GroupTag::GL:
      return "GL";
    case GroupTag::SO2:
      return "SO2";
  }
  return "?";
}

namespace {

template <class F>
using Entry = TowerElement<F>;

template <class F>
Entry<F> zero() {
  return Entry<F>(F(0));
}

template <class F>
Entry<F> one() {
  return Entry<F>(F(1));
}

template <class F>
Entry<F> det_of(std::size_t n, std::vector<Entry<F>> m) {
  if (n == 1) return m[0];
  if (n == 2) return m[0] * m[3] - m[1] * m[2];
  Entry<F> det = one<F>();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p * n + c].is_zero()) ++p;
    if (p == n) return zero<F>();
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[p * n + k], m[c * n + k]);
      det = -det;
    }
    det = det * m[c * n + c];
    const Entry<F> inv = m[c * n + c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r * n + c].is_zero()) continue;
      const Entry<F> f = m[r * n + c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r * n + k] = m[r * n + k] - f * m[c * n + k];
    }
  }
  return det;
}

GroupTag product_tag(GroupTag a, GroupTag b) {
  if (a == GroupTag::GL || b == GroupTag::GL) return GroupTag::GL;
  if (a == GroupTag::SO2 && b == GroupTag::SO2) return GroupTag::SO2;
  return GroupTag::SL;
}

}  // namespace

// --------------------------------------------------------------- GroupMatrix

template <class F>
GroupMatrix<F>::GroupMatrix(std::size_t n, std::vector<Entry> entries, GroupTag tag)
    : n_(n), e_(std::move(entries)), tag_(tag) {
  if (n_ == 0 || e_.size() != n_ * n_) throw Error(ErrorKind::DimensionMismatch, "entry count is not n^2");
  switch (tag_) {
    case GroupTag::SL:
      if (det() != one<F>()) throw Error(ErrorKind::NotSL, "determinant is not 1");
      break;
    case GroupTag::GL:
      if (det().is_zero()) throw Error(ErrorKind::Singular, "determinant is 0");
      break;
    case GroupTag::SO2:
      if (n_ != 2 || e_[0] != e_[3] || e_[1] != -e_[2] || e_[0] * e_[0] + e_[1] * e_[1] != one<F>()) {
        throw Error(ErrorKind::PreconditionViolation, "not of the form [[a,b],[-b,a]] with a^2+b^2 = 1");
      }
      break;
  }
}

template <class F>
GroupMatrix<F> GroupMatrix<F>::identity(std::size_t n, GroupTag tag) {
  std::vector<Entry> e(n * n, zero<F>());
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = one<F>();
  return GroupMatrix(Unchecked{}, n, std::move(e), tag);
}

template <class F>
GroupMatrix<F> GroupMatrix<F>::elementary(std::size_t n, std::size_t i, std::size_t j, const Entry& mu) {
  if (i == j || i >= n || j >= n) throw Error(ErrorKind::PreconditionViolation, "bad transvection position");
  GroupMatrix g = identity(n);
  g.e_[i * n + j] = mu;
  return g;
}

template <class F>
GroupMatrix<F> GroupMatrix<F>::torus(std::size_t n, std::size_t i, std::size_t j, const Entry& lambda) {
  if (i == j || i >= n || j >= n) throw Error(ErrorKind::PreconditionViolation, "bad torus position");
  GroupMatrix g = identity(n);
  g.e_[i * n + i] = lambda.inverse();
  g.e_[j * n + j] = lambda;
  return g;
}

template <class F>
GroupMatrix<F> GroupMatrix<F>::gl_diagonal(std::size_t n, const Entry& lambda) {
  if (lambda.is_zero()) throw Error(ErrorKind::Singular, "zero diagonal entry");
  GroupMatrix g = identity(n, GroupTag::GL);
  g.e_[0] = lambda;
  return g;
}

template <class F>
GroupMatrix<F> GroupMatrix<F>::rotation(const Entry& a, const Entry& b) {
  return GroupMatrix(2, {a, b, -b, a}, GroupTag::SO2);
}

template <class F>
bool GroupMatrix<F>::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (at(i, j) != (i == j ? one<F>() : zero<F>())) return false;
    }
  }
  return true;
}

template <class F>
TowerElement<F> GroupMatrix<F>::det() const {
  return det_of<F>(n_, e_);
}

template <class F>
GroupMatrix<F> GroupMatrix<F>::inverse() const {
  const std::size_t n = n_;
  if (n == 2) {
    const Entry d = det();
    if (d.is_zero()) throw Error(ErrorKind::Singular, "determinant is 0");
    const Entry di = d.inverse();
    return GroupMatrix(Unchecked{}, 2, {e_[3] * di, -e_[1] * di, -e_[2] * di, e_[0] * di}, tag_);
  }
  std::vector<Entry> m = e_;
  GroupMatrix inv = identity(n, tag_);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p * n + c].is_zero()) ++p;
    if (p == n) throw Error(ErrorKind::Singular, "determinant is 0");
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(m[p * n + k], m[c * n + k]);
      std::swap(inv.e_[p * n + k], inv.e_[c * n + k]);
    }
    const Entry piv = m[c * n + c].inverse();
    for (std::size_t k = 0; k < n; ++k) {
      m[c * n + k] = m[c * n + k] * piv;
      inv.e_[c * n + k] = inv.e_[c * n + k] * piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r * n + c].is_zero()) continue;
      const Entry f = m[r * n + c];
      for (std::size_t k = 0; k < n; ++k) {
        m[r * n + k] = m[r * n + k] - f * m[c * n + k];
        inv.e_[r * n + k] = inv.e_[r * n + k] - f * inv.e_[c * n + k];
      }
    }
  }
  return inv;
}

template <class F>
GroupMatrix<F> GroupMatrix<F>::multiply(const GroupMatrix& a, const GroupMatrix& b) {
  if (a.n_ != b.n_) throw Error(ErrorKind::DimensionMismatch, "matrix sizes differ");
  const std::size_t n = a.n_;
  std::vector<Entry> e(n * n, zero<F>());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Entry& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Entry& y = b.at(k, j);
        if (!y.is_zero()) e[i * n + j] += x * y;
      }
    }
  }
  return GroupMatrix(Unchecked{}, n, std::move(e), product_tag(a.tag_, b.tag_));
}

template <class F>
bool GroupMatrix<F>::equal(const GroupMatrix& a, const GroupMatrix& b) {
  if (a.n_ != b.n_) return false;
  for (std::size_t i = 0; i < a.e_.size(); ++i) {
    if (a.e_[i] != b.e_[i]) return false;
  }
  return true;
}

template <class F>
std::string to_text(const GroupMatrix<F>& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < g.n(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < g.n(); ++j) {
      if (j) s += ",";
      s += to_text(g.at(i, j));
    }
    s += "]";
  }
  return s + "]";
}

// ------------------------------------------------------------ GeneratorSpec

template <class F>
GeneratorSpec<F> GeneratorSpec<F>::valuation_ball(ValuationMap<F> vmap, Rational r, GroupTag tag) {
  if (r < 1) throw Error(ErrorKind::PreconditionViolation, "valuation ball radius must be at least 1");
  GeneratorSpec s;
  s.mode = ValuationBall<F>{std::move(vmap), std::move(r)};
  s.tag = tag;
  return s;
}

template <class F>
GeneratorSpec<F> GeneratorSpec<F>::radius_ball(Rational C, GroupTag tag) {
  if (C < 2) throw Error(ErrorKind::PreconditionViolation, "radius ball needs C >= 2");
  GeneratorSpec s;
  s.mode = RadiusBall{std::move(C)};
  s.tag = tag;
  return s;
}

template <class F>
std::string to_text(const GeneratorSpec<F>& spec) {
  std::string s;
  if (spec.is_valuation()) {
    const auto& vm = spec.ball().vmap;
    std::string kind = vm.kind() == ValuationKind::TAdic ? "t_adic" : "p_adic(" + std::to_string(vm.prime()) + ")";
    s = "valuation_ball(" + kind + ",r=" + to_text(spec.ball().r) + ")";
  } else {
    s = "radius_ball(C=" + to_text(spec.radius().C) + ")";
  }
  s += "/" + to_text(spec.tag);
  if (spec.extra_gl_diagonals) s += "+diag";
  return s;
}

// --------------------------------------------------------------- membership

namespace {

template <class F>
bool entry_in_ball(const Entry<F>& e, const GeneratorSpec<F>& spec) {
  if (spec.is_valuation()) return spec.ball().vmap(e).abs_at_most(spec.ball().r);
  if constexpr (!std::is_same_v<F, Rational>) {
    throw Error(ErrorKind::PreconditionViolation, "radius balls need entries algebraic over Q");
  } else {
    const Rational& C = spec.radius().C;
    if (e.in_base()) return abs(e.base_value()) <= C;
    AlgebraicNumber x(e);
    Rational tol = spec.radius().tol;
    for (int attempt = 0; attempt < 6; ++attempt) {
      RadiusEnclosure enc = galois_radius(x, tol);
      if (enc.upper <= C) return true;
      if (enc.lower > C) return false;
      tol /= 16;
    }
    throw Error(ErrorKind::EnclosureInconclusive, "enclosure of " + to_text(e) + " straddles C");
  }
}

}  // namespace

template <class F>
bool is_in_S(const GroupMatrix<F>& g, const GeneratorSpec<F>& spec) {
  if (spec.tag == GroupTag::SO2 && g.tag() != GroupTag::SO2) {
    throw Error(ErrorKind::PreconditionViolation, "SO2 spec needs an SO2 matrix");
  }
  if (spec.tag != GroupTag::GL && g.tag() == GroupTag::GL) {
    throw Error(ErrorKind::PreconditionViolation, "GL matrix tested against an SL spec");
  }
  if (g.tag() == GroupTag::GL && g.det() != one<F>()) {
    if (!spec.extra_gl_diagonals) return false;
    for (std::size_t i = 0; i < g.n(); ++i) {
      for (std::size_t j = 0; j < g.n(); ++j) {
        if (i == 0 && j == 0) continue;
        if (g.at(i, j) != (i == j ? one<F>() : zero<F>())) return false;
      }
    }
    return entry_in_ball(g.at(0, 0), spec);
  }
  for (const auto& e : g.entries()) {
    if (!entry_in_ball(e, spec)) return false;
  }
  return true;
}

// ------------------------------------------------------------- conjugation

std::vector<ConventionCheck> conjugation_convention_check(std::uint64_t seed, std::size_t samples) {
  using M = GroupMatrix<RationalFunction>;
  using E = QtAlgebraic;
  std::vector<ConventionCheck> out;
  auto check = [&](const std::vector<RationalFunction>& lambdas, const RationalFunction& mu) {
    M h = M::identity(2);
    RationalFunction prod(1);
    std::string ltext;
    for (const auto& l : lambdas) {
      h = h * M::torus(2, 0, 1, E(l));
      prod *= l;
      ltext += (ltext.empty() ? "" : ";") + to_text(l);
    }
    const RationalFunction target = prod * prod * mu;
    const M lhs = M::elementary(2, 0, 1, E(mu)).conjugated_by(h);
    out.push_back({ltext, to_text(mu), to_text(target), lhs == M::elementary(2, 0, 1, E(target))});
  };
  const RationalFunction t = RationalFunction::t();
  check({t}, RationalFunction(1));
  check({RationalFunction(1)}, t.pow(3) + RationalFunction(1));
  check({t}, RationalFunction::t_power(-2));
  Prng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const long m = rng.uniform(1, 4);
    std::vector<RationalFunction> lambdas;
    while (static_cast<long>(lambdas.size()) < m) {
      RationalFunction l = random_rational_function(rng);
      if (!l.is_zero()) lambdas.push_back(l);
    }
    check(lambdas, random_rational_function(rng));
  }
  return out;
}

long conjugation_exponent(const Rational& v) {
  // admissible n lie in [ceil((v-1)/2), floor((v+1)/2)]
  const Integer lo = ceil(Rational((v - 1) / 2));
  const Integer hi = floor(Rational((v + 1) / 2));
  Integer best = lo;
  for (Integer n = lo; n <= hi; ++n) {
    if (abs(n) < abs(best)) best = n;
  }
  return best.get_si();
}

// ------------------------------------------------------------ factorization

template <class F>
Word<F> factor_elementary(std::size_t n, std::size_t i, std::size_t j, const TowerElement<F>& alpha,
                          const TowerElement<F>& lambda, const GeneratorSpec<F>& spec) {
  if (!spec.is_valuation()) throw Error(ErrorKind::PreconditionViolation, "factorization needs a valuation ball");
  const auto& vm = spec.ball().vmap;
  if (vm(lambda) != ValuationValue(1)) {
    throw Error(ErrorKind::LambdaNotUniformizer, "omega(lambda) = " + to_text(vm(lambda)));
  }
  Word<F> w{n, GroupTag::SL, {}};
  if (alpha.is_zero()) {
    w.factors.push_back(GroupMatrix<F>::identity(n));
    return w;
  }
  const long m = conjugation_exponent(vm(alpha).value());
  const TowerElement<F> mu = alpha * lambda.pow(-2 * m);
  const GroupMatrix<F> d = GroupMatrix<F>::torus(n, i, j, lambda);
  const GroupMatrix<F> d_inv = GroupMatrix<F>::torus(n, i, j, lambda.inverse());
  const GroupMatrix<F>& left = m >= 0 ? d_inv : d;
  const GroupMatrix<F>& right = m >= 0 ? d : d_inv;
  for (long k = 0; k < std::abs(m); ++k) w.factors.push_back(left);
  w.factors.push_back(GroupMatrix<F>::elementary(n, i, j, mu));
  for (long k = 0; k < std::abs(m); ++k) w.factors.push_back(right);
  return w;
}

template <class F>
std::vector<Transvection<F>> elementary_decomposition(const GroupMatrix<F>& g) {
  const std::size_t n = g.n();
  if (g.det() != one<F>()) throw Error(ErrorKind::NotSL, "determinant is not 1");
  std::vector<Entry<F>> m = g.entries();
  std::vector<Transvection<F>> ops;  // row i += mu * row j, in order of application
  auto apply = [&](std::size_t i, std::size_t j, const Entry<F>& mu) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!m[j * n + k].is_zero()) m[i * n + k] += mu * m[j * n + k];
    }
    ops.push_back({i, j, mu});
  };
  for (std::size_t c = 0; c < n; ++c) {
    if (c + 1 < n && m[c * n + c] != one<F>()) {
      std::size_t r = c + 1;
      while (r < n && m[r * n + c].is_zero()) ++r;
      if (r == n) {
        // nothing below the pivot: copy the pivot row down first
        r = c + 1;
        apply(r, c, one<F>());
      }
      apply(c, r, (one<F>() - m[c * n + c]) / m[r * n + c]);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r != c && !m[r * n + c].is_zero()) apply(r, c, -m[r * n + c]);
    }
  }
  // L_k ... L_1 g = I, so g = L_1^-1 ... L_k^-1
  for (auto& op : ops) op.mu = -op.mu;
  return ops;
}

template <class F>
Word<F> factor_slN(const GroupMatrix<F>& g, const GeneratorSpec<F>& spec, const TowerElement<F>& lambda) {
  if (!spec.is_valuation()) throw Error(ErrorKind::PreconditionViolation, "factorization needs a valuation ball");
  Word<F> w{g.n(), GroupTag::SL, {}};
  if (g.is_identity()) return w;
  GroupMatrix<F> h = g.tag() == GroupTag::SL ? g : GroupMatrix<F>(g.n(), g.entries(), GroupTag::SL);
  if (is_in_S(h, spec)) {
    w.factors.push_back(h);
    return w;
  }
  for (const auto& t : elementary_decomposition(h)) {
    Word<F> part = factor_elementary(g.n(), t.i, t.j, t.mu, lambda, spec);
    w.factors.insert(w.factors.end(), part.factors.begin(), part.factors.end());
  }
  return w;
}

template <class F>
Word<F> factor_glN(const GroupMatrix<F>& g, const GeneratorSpec<F>& spec, const TowerElement<F>& lambda) {
  if (!spec.is_valuation()) throw Error(ErrorKind::PreconditionViolation, "factorization needs a valuation ball");
  const std::size_t n = g.n();
  const Entry<F> delta = g.det();
  if (delta.is_zero()) throw Error(ErrorKind::Singular, "determinant is 0");
  if (delta == one<F>()) return factor_slN(g, spec, lambda);
  if (!spec.extra_gl_diagonals) {
    throw Error(ErrorKind::PreconditionViolation, "GL factorization needs the extra diagonal generators");
  }
  if (spec.ball().vmap(lambda) != ValuationValue(1)) {
    throw Error(ErrorKind::LambdaNotUniformizer, "omega(lambda) must be 1");
  }
  Word<F> w{n, GroupTag::GL, {}};
  const Rational wd = spec.ball().vmap(delta).value();
  const long k = Integer(wd.get_num() / wd.get_den()).get_si();  // truncated toward zero
  const GroupMatrix<F> step = GroupMatrix<F>::gl_diagonal(n, k >= 0 ? lambda : lambda.inverse());
  for (long i = 0; i < std::abs(k); ++i) w.factors.push_back(step);
  const Entry<F> u = delta * lambda.pow(-k);
  if (u != one<F>()) w.factors.push_back(GroupMatrix<F>::gl_diagonal(n, u));
  const GroupMatrix<F> h_gl = GroupMatrix<F>::gl_diagonal(n, delta.inverse()) * g;
  const GroupMatrix<F> h(n, h_gl.entries(), GroupTag::SL);
  Word<F> rest = factor_slN(h, spec, lambda);
  w.factors.insert(w.factors.end(), rest.factors.begin(), rest.factors.end());
  return w;
}

template <class F>
GroupMatrix<F> word_evaluate(const Word<F>& w) {
  GroupMatrix<F> acc = GroupMatrix<F>::identity(w.n, w.tag);
  for (const auto& f : w.factors) acc = acc * f;
  return acc;
}

// ------------------------------------------------------------ lower bounds

template <class F>
long width_lower_bound(const GroupMatrix<F>& g, const GeneratorSpec<F>& spec) {
  if (g.is_identity()) return 0;
  if (spec.is_valuation()) {
    Rational worst = 0;
    for (const auto& e : g.entries()) {
      const ValuationValue w = spec.ball().vmap(e);
      if (!w.is_infinite()) worst = std::max(worst, Rational(-w.value()));
    }
    return std::max(1L, ceil(Rational(worst / spec.ball().r)).get_si());
  }
  if constexpr (!std::is_same_v<F, Rational>) {
    throw Error(ErrorKind::PreconditionViolation, "radius balls need entries algebraic over Q");
  } else {
    Rational largest = 0;
    for (const auto& e : g.entries()) largest = std::max(largest, galois_radius(e, spec.radius().tol).lower);
    const Rational& C = spec.radius().C;
    long k = 1;
    Rational bound = C;  // 2^(k-1) C^k
    while (bound < largest) {
      ++k;
      bound *= 2 * C;
    }
    return k;
  }
}

template <class F>
long abs_valuation_bound(const GroupMatrix<F>& g, const GeneratorSpec<F>& spec) {
  if (g.is_identity()) return 0;
  Rational worst = 0;
  for (const auto& e : g.entries()) {
    const ValuationValue w = spec.ball().vmap(e);
    if (!w.is_infinite()) worst = std::max(worst, Rational(abs(w.value())));
  }
  return ceil(Rational(worst / spec.ball().r)).get_si();
}

template <class F>
bool verify_certificate(const WidthCertificate<F>& cert, const GeneratorSpec<F>& spec) {
  if (cert.lower_bound > width_lower_bound(cert.target, spec)) return false;
  if (!cert.upper_word) return true;
  const Word<F>& w = *cert.upper_word;
  if (static_cast<long>(w.length()) < cert.lower_bound) return false;
  for (const auto& f : w.factors) {
    if (!is_in_S(f, spec)) return false;
  }
  return word_evaluate(w) == cert.target;
}

template <class F>
std::string certificate_json(const WidthCertificate<F>& cert, const GeneratorSpec<F>& spec) {
  nlohmann::ordered_json j;
  j["target"] = to_text(cert.target);
  j["spec"] = to_text(spec);
  j["lower_bound"] = cert.lower_bound;
  nlohmann::ordered_json word = nlohmann::ordered_json::array();
  if (cert.upper_word) {
    for (const auto& f : cert.upper_word->factors) word.push_back(to_text(f));
  }
  j["word"] = word;
  j["verified"] = verify_certificate(cert, spec);
  return j.dump();
}

// ---------------------------------------------------------------- SO(2)

template <class F>
SO2Root<F> so2_sqrt(const GroupMatrix<F>& z) {
  if (z.tag() != GroupTag::SO2) throw Error(ErrorKind::PreconditionViolation, "so2_sqrt needs an SO2 matrix");
  const Entry<F>& a = z.at(0, 0);
  const Entry<F>& b = z.at(0, 1);
  const TowerHandle<F> tower = common_tower(a.tower(), b.tower());
  if (z.is_identity()) return {z, tower};
  if (a == -one<F>()) return {GroupMatrix<F>::rotation(zero<F>(), one<F>()), tower};
  const Entry<F> half(F(1) / F(2));
  auto root = adjoin_sqrt(tower, (one<F>() + a) * half);
  const Entry<F> a1 = root.root;
  const Entry<F> b1 = b.lift_to(root.tower) * (a1 * Entry<F>(F(2))).inverse();
  GroupMatrix<F> w = GroupMatrix<F>::rotation(a1, b1);
  return {w, root.tower};
}

template <class F>
SO2Generation<F> so2_generate(const GroupMatrix<F>& z, const GeneratorSpec<F>& spec, unsigned k_max,
                              std::uint64_t seed) {
  SO2Generation<F> out{Word<F>{2, GroupTag::SO2, {}}, 0, spec};
  GroupMatrix<F> w = z;
  for (;;) {
    if (out.spec.is_valuation()) {
      auto& ball = std::get<0>(out.spec.mode);
      const TowerHandle<F> tw = common_tower(w.at(0, 0).tower(), w.at(0, 1).tower());
      if (!ball.vmap.tower()->extends(*tw)) ball.vmap = extend_to_tower(ball.vmap, tw, derive_seed(seed, out.k));
    }
    if (is_in_S(w, out.spec)) break;
    if (out.k == k_max) throw Error(ErrorKind::KMaxExceeded, "no root in S after " + std::to_string(k_max) + " steps");
    w = so2_sqrt(w).w;
    ++out.k;
  }
  out.word.factors.assign(std::size_t{1} << out.k, w);
  return out;
}

ValuationWitness so2_witness_valuation(unsigned n, std::uint64_t seed) {
  const RationalFunction a = RationalFunction::t_power(-(1L << n));
  auto root = adjoin_sqrt(TowerNode<RationalFunction>::base(), QtAlgebraic(RationalFunction(1) - a * a));
  auto z = GroupMatrix<RationalFunction>::rotation(QtAlgebraic(a).lift_to(root.tower), root.root);
  auto vm = extend_to_tower(ValuationMap<RationalFunction>::t_adic(), root.tower, seed);
  return {z, vm};
}

GaloisWitness so2_witness_galois(unsigned n, const Rational& tol) {
  EisensteinQuadratic q = eisenstein_near(Rational(1, 2), Rational(2), Rational(1, 1000), 2);
  const QAlgebraic x = eisenstein_small_root(q);
  const QAlgebraic a = x.pow(1L << n);
  auto root = adjoin_sqrt(a.tower(), QAlgebraic(1) - a * a);
  auto z = GroupMatrix<Rational>::rotation(a.lift_to(root.tower), root.root);
  return {z, q, galois_radius(a, tol)};
}

Rational entry_growth_bound(long k, const Rational& C) {
  if (k < 1) throw Error(ErrorKind::PreconditionViolation, "k must be at least 1");
  return pow(Rational(2), static_cast<unsigned long>(k - 1)) * pow(C, static_cast<unsigned long>(k));
}

Rational embedded_growth_bound(long k, long n, const Rational& D, const Rational& C) {
  if (k < 1) throw Error(ErrorKind::PreconditionViolation, "k must be at least 1");
  const Rational c = Rational(n * n) * D * D * C;
  return pow(Rational(n), static_cast<unsigned long>(k - 1)) * pow(c, static_cast<unsigned long>(k));
}

// ---------------------------------------------------------- growth checks

namespace {

// c t^k u with k in {-1, 0, 1} and u a unit at t = 0
RationalFunction bounded_element(Prng& rng) {
  RationalFunction u(QPoly{Rational(1), make_rational(rng.uniform(-3, 3), rng.uniform(1, 2))},
                     QPoly{Rational(1), make_rational(rng.uniform(-3, 3), rng.uniform(1, 2))});
  Rational c = make_rational(rng.uniform(1, 5) * (rng.coin() ? 1 : -1), rng.uniform(1, 3));
  return RationalFunction(c) * u * RationalFunction::t_power(rng.uniform(-1, 1));
}

}  // namespace

GroupMatrix<RationalFunction> random_valuation_generator(Prng& rng) {
  using M = GroupMatrix<RationalFunction>;
  switch (rng.below(4)) {
    case 0:
      return M::torus(2, 0, 1, QtAlgebraic(bounded_element(rng)));
    case 1:
      if (rng.coin()) return M::elementary(2, 0, 1, QtAlgebraic(bounded_element(rng)));
      return M::elementary(2, 1, 0, QtAlgebraic(bounded_element(rng)));
    default:
      for (int attempt = 0; attempt < 50; ++attempt) {
        RationalFunction a = bounded_element(rng), b = bounded_element(rng), c = bounded_element(rng);
        RationalFunction d = (RationalFunction(1) + b * c) / a;
        if (!d.is_zero() && std::abs(d.order_at_zero()) > 1) continue;
        return M(2, {QtAlgebraic(a), QtAlgebraic(b), QtAlgebraic(c), QtAlgebraic(d)}, GroupTag::SL);
      }
      return M::elementary(2, 0, 1, QtAlgebraic(bounded_element(rng)));
  }
}

GroupMatrix<Rational> random_radius_generator(Prng& rng) {
  using M = GroupMatrix<Rational>;
  M g = M::identity(2);
  if (rng.coin()) {
    const long m = rng.uniform(1, 9), n = rng.uniform(0, 9);
    const Rational h(m * m + n * n);
    g = M::rotation(QAlgebraic(Rational(Rational(m * m - n * n) / h)), QAlgebraic(Rational(Rational(2 * m * n) / h)));
  } else {
    for (;;) {
      Rational a = make_rational(rng.uniform(-8, 8), 4), b = make_rational(rng.uniform(-8, 8), 4),
               c = make_rational(rng.uniform(-8, 8), 4);
      if (a == 0) continue;
      Rational d = (1 + b * c) / a;
      if (abs(d) > 2) continue;
      g = M(2, {QAlgebraic(a), QAlgebraic(b), QAlgebraic(c), QAlgebraic(d)}, GroupTag::SL);
      break;
    }
  }
  // conjugate by a signed permutation
  const QAlgebraic s1(rng.coin() ? 1L : -1L), s2(rng.coin() ? 1L : -1L);
  M p = rng.coin() ? M(2, {s1, QAlgebraic(0), QAlgebraic(0), s2}, GroupTag::GL)
                   : M(2, {QAlgebraic(0), s1, s2, QAlgebraic(0)}, GroupTag::GL);
  M conj = p.inverse() * g * p;
  return M(2, conj.entries(), GroupTag::SL);
}

GrowthReport growth_check_valuation(std::size_t words, std::size_t max_len, std::uint64_t seed) {
  GrowthReport rep;
  auto vm = ValuationMap<RationalFunction>::t_adic();
  for (std::size_t w = 0; w < words; ++w) {
    Prng rng(derive_seed(seed, w));
    const long k = rng.uniform(1, static_cast<long>(max_len));
    GroupMatrix<RationalFunction> prod = GroupMatrix<RationalFunction>::identity(2);
    for (long i = 0; i < k; ++i) prod = prod * random_valuation_generator(rng);
    ++rep.words;
    for (const auto& e : prod.entries()) {
      if (!vm(e).abs_at_most(Rational(k))) {
        ++rep.violations;
        rep.details.push_back("word " + std::to_string(w) + " k=" + std::to_string(k) + " omega=" + to_text(vm(e)) +
                              " entry=" + to_text(e));
      }
    }
  }
  return rep;
}

GrowthReport growth_check_radius(std::size_t words, std::size_t max_len, std::uint64_t seed) {
  GrowthReport rep;
  const Rational C(2);
  for (std::size_t w = 0; w < words; ++w) {
    Prng rng(derive_seed(seed, w));
    const long k = rng.uniform(1, static_cast<long>(max_len));
    GroupMatrix<Rational> prod = GroupMatrix<Rational>::identity(2);
    for (long i = 0; i < k; ++i) prod = prod * random_radius_generator(rng);
    ++rep.words;
    const Rational bound = entry_growth_bound(k, C);
    for (const auto& e : prod.entries()) {
      const RadiusEnclosure enc = galois_radius(e, Rational(1, 64));
      if (enc.upper > bound) {
        ++rep.violations;
        rep.details.push_back("word " + std::to_string(w) + " k=" + std::to_string(k) +
                              " entry upper=" + to_text(enc.upper) + " bound=" + to_text(bound));
      }
    }
  }
  return rep;
}

// ----------------------------------------------------------- instantiation

#define WIDTHLAB_INSTANTIATE_WIDTH(F)                                                                        \
  template class GroupMatrix<F>;                                                                             \
  template struct GeneratorSpec<F>;                                                                          \
  template std::string to_text(const GroupMatrix<F>&);                                                       \
  template std::string to_text(const GeneratorSpec<F>&);                                                     \
  template GroupMatrix<F> word_evaluate(const Word<F>&);                                                     \
  template bool is_in_S(const GroupMatrix<F>&, const GeneratorSpec<F>&);                                     \
  template Word<F> factor_elementary(std::size_t, std::size_t, std::size_t, const TowerElement<F>&,          \
                                     const TowerElement<F>&, const GeneratorSpec<F>&);                       \
  template std::vector<Transvection<F>> elementary_decomposition(const GroupMatrix<F>&);                     \
  template Word<F> factor_slN(const GroupMatrix<F>&, const GeneratorSpec<F>&, const TowerElement<F>&);       \
  template Word<F> factor_glN(const GroupMatrix<F>&, const GeneratorSpec<F>&, const TowerElement<F>&);       \
  template long width_lower_bound(const GroupMatrix<F>&, const GeneratorSpec<F>&);                           \
  template long abs_valuation_bound(const GroupMatrix<F>&, const GeneratorSpec<F>&);                         \
  template bool verify_certificate(const WidthCertificate<F>&, const GeneratorSpec<F>&);                     \
  template std::string certificate_json(const WidthCertificate<F>&, const GeneratorSpec<F>&);                \
  template SO2Root<F> so2_sqrt(const GroupMatrix<F>&);                                                       \
  template SO2Generation<F> so2_generate(const GroupMatrix<F>&, const GeneratorSpec<F>&, unsigned, std::uint64_t);

WIDTHLAB_INSTANTIATE_WIDTH(Rational)
WIDTHLAB_INSTANTIATE_WIDTH(RationalFunction)

#undef WIDTHLAB_INSTANTIATE_WIDTH

}  // namespace widthlab
