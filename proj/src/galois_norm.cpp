#include "widthlab/galois_norm.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "widthlab/errors.hpp"
#include "widthlab/sampling.hpp"

namespace widthlab {

namespace {

Rational abs_q(const Rational& x) { return x < 0 ? Rational(-x) : x; }

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Bits of 1/tol, rounded up.
unsigned tol_bits(const Rational& tol) {
  long b = static_cast<long>(mpz_sizeinbase(tol.get_den_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(tol.get_num_mpz_t(), 2)) + 1;
  return static_cast<unsigned>(std::max(b, 1L));
}

std::vector<Integer> primitive_integer_form(const QPoly& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> a;
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    Rational s = c * l;
    a.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.back().get_mpz_t());
  }
  for (auto& x : a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return a;
}

// b(X^2) = (-1)^d a(X) a(-X): the roots of b are the squares of the roots of a.
std::vector<Integer> graeffe_step(const std::vector<Integer>& a) {
  const std::size_t d = a.size() - 1;
  std::vector<Integer> b(d + 1, Integer(0));
  for (std::size_t k = 0; k <= d; ++k) {
    // coefficient of X^{2k} in a(X) a(-X)
    Integer acc = 0;
    for (std::size_t i = (2 * k > d ? 2 * k - d : 0); i <= std::min(2 * k, d); ++i) {
      const std::size_t j = 2 * k - i;
      if (j % 2 == 0) {
        acc += a[i] * a[j];
      } else {
        acc -= a[i] * a[j];
      }
    }
    b[k] = (d % 2 == 0) ? acc : Integer(-acc);
  }
  Integer g = 0;
  for (const auto& x : b) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1) {
    for (auto& x : b) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return b;
}

// Bounds on the max root modulus of the original polynomial from b, the
// polynomial after j Graeffe steps (roots raised to the power 2^j).
RadiusEnclosure bracket(const std::vector<Integer>& b, unsigned j, unsigned bits) {
  const std::size_t d = b.size() - 1;
  const Integer lead = abs(b[d]);
  Rational lower = 0, upper = 0;
  for (std::size_t i = 1; i <= d; ++i) {
    const Integer& c = b[d - i];
    if (c == 0) continue;
    const unsigned long k = static_cast<unsigned long>(i) << j;
    // |e_i| <= C(d, i) R^i
    Rational lo_arg(abs(c), lead * binomial(d, i));
    lo_arg.canonicalize();
    lower = std::max(lower, root_lower(lo_arg, k, bits));
    // Fujiwara: R <= 2 max |c_{d-i}/c_d|^{1/i}, with |c_0/(2 c_d)|^{1/d} last
    Rational up_arg(abs(c) * (Integer(1) << static_cast<mp_bitcnt_t>(i)), lead);
    if (i == d) up_arg /= 2;
    up_arg.canonicalize();
    upper = std::max(upper, root_upper(up_arg, k, bits));
  }
  return {lower, upper, j};
}

}  // namespace

RadiusEnclosure root_radius(const QPoly& p, const Rational& tol) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root radius of the zero polynomial");
  if (tol <= 0) throw Error(ErrorKind::PreconditionViolation, "tolerance must be positive");
  QPoly q = p.shifted_down(p.low_order());
  if (q.degree() <= 0) return {Rational(0), Rational(0), 0};
  if (q.degree() == 1) {
    Rational r = abs_q(q.coeff(0) / q.coeff(1));
    return {r, r, 0};
  }
  std::vector<Integer> a = primitive_integer_form(q);
  const std::size_t d = a.size() - 1;
  // upper/lower shrinks roughly like (2d)^(2^-j); skip hopeless early checks
  const double need = std::log(2.0 * static_cast<double>(d)) / mpq_get_d(tol.get_mpq_t());
  const unsigned j0 = need > 4 ? static_cast<unsigned>(std::ceil(std::log2(need))) - 2 : 0;
  const unsigned bits = tol_bits(tol) + 8;
  for (unsigned j = 0; j <= kMaxGraeffeSteps; ++j) {
    if (j >= j0) {
      RadiusEnclosure e = bracket(a, j, bits);
      if (e.upper - e.lower <= tol * std::max(e.lower, Rational(1))) return e;
    }
    if (j < kMaxGraeffeSteps) a = graeffe_step(a);
  }
  throw Error(ErrorKind::TolTooTight, "root radius did not reach the tolerance within the doubling cap");
}

RadiusEnclosure galois_radius(const AlgebraicNumber& x, const Rational& tol) {
  if (x.element.in_base()) {
    Rational r = abs_q(x.element.base_value());
    return {r, r, 0};
  }
  return root_radius(x.charpoly, tol);
}

// ----------------------------------------------------------------- Eisenstein

QPoly EisensteinQuadratic::poly() const {
  return QPoly{Rational(beta, gamma), Rational(alpha, gamma), Rational(1)};
}

Rational EisensteinQuadratic::discriminant() const {
  Rational s(alpha, gamma), p(beta, gamma);
  s.canonicalize();
  p.canonicalize();
  return s * s - 4 * p;
}

namespace {

// Nearest multiple of ell to x, ties to the smaller one.
Integer nearest_multiple(const Rational& x, const Integer& ell) {
  Integer m = floor(x / ell);
  Integer lo = m * ell, hi = (m + 1) * ell;
  return abs_q(x - lo) <= abs_q(hi - x) ? lo : hi;
}

// ell * m nearest to x with ell ∤ m.
Integer nearest_exact_multiple(const Rational& x, const Integer& ell) {
  Rational t = x / ell;
  Integer m0 = floor(t);
  Integer best;
  Rational best_dist = -1;
  for (Integer m = m0 - 1; m <= m0 + 2; ++m) {
    if (m % ell == 0) continue;
    Rational dist = abs_q(t - m);
    if (best_dist < 0 || dist < best_dist) {
      best = m;
      best_dist = dist;
    }
  }
  return best * ell;
}

}  // namespace

EisensteinQuadratic eisenstein_near(const Rational& a, const Rational& b, const Rational& tol, std::uint64_t ell,
                                    std::uint64_t gamma_cap) {
  if (!(0 < a && a < 1 && 1 < b)) throw Error(ErrorKind::PreconditionViolation, "need 0 < a < 1 < b");
  if (tol <= 0) throw Error(ErrorKind::PreconditionViolation, "tolerance must be positive");
  if (!is_prime(ell)) throw Error(ErrorKind::NotPrime, std::to_string(ell) + " is not prime");
  const Integer L(static_cast<unsigned long>(ell));
  const Rational sum = -(a + b);
  const Rational prod = a * b;
  const unsigned bits = tol_bits(tol) + 32;
  for (std::uint64_t g = 1; g <= gamma_cap; ++g) {
    if (g % ell == 0) continue;
    const Integer gamma(static_cast<unsigned long>(g));
    EisensteinQuadratic q;
    q.ell = ell;
    q.gamma = gamma;
    q.alpha = nearest_multiple(sum * gamma, L);
    q.beta = nearest_exact_multiple(prod * gamma, L);
    Rational s(q.alpha, gamma), p(q.beta, gamma);
    s.canonicalize();
    p.canonicalize();
    if (abs_q(s - sum) > tol || abs_q(p - prod) > tol) continue;
    const Rational disc = s * s - 4 * p;
    if (disc <= 0) continue;
    const Rational lo = root_lower(disc, 2, bits), hi = root_upper(disc, 2, bits);
    q.small_lower = (-s - hi) / 2;
    q.small_upper = (-s - lo) / 2;
    q.large_lower = (-s + lo) / 2;
    q.large_upper = (-s + hi) / 2;
    q.epsilon = std::max({abs_q(q.small_lower - a), abs_q(q.small_upper - a), abs_q(q.large_lower - b),
                          abs_q(q.large_upper - b)});
    if (q.epsilon <= tol) return q;
  }
  throw Error(ErrorKind::TolTooTight, "no admissible quadratic with gamma <= " + std::to_string(gamma_cap));
}

QAlgebraic eisenstein_small_root(const EisensteinQuadratic& q) {
  Rational s(q.alpha, q.gamma);
  s.canonicalize();
  auto r = adjoin_sqrt(TowerNode<Rational>::base(), QAlgebraic(q.discriminant()));
  return (QAlgebraic(Rational(-s)) - r.root) * QAlgebraic(Rational(1, 2));
}

// ------------------------------------------------------------------- reports

std::size_t AxiomReport::violations() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const AxiomRecord& r) {
    return !r.pass;
  }));
}

std::string AxiomReport::to_jsonl() const {
  std::string out;
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["axiom"] = r.axiom;
    j["inputs"] = r.inputs;
    j["verdict"] = r.pass ? "pass" : "violation";
    j["enclosures"] = r.enclosures;
    out += j.dump() + "\n";
  }
  return out;
}

template <class F>
AxiomReport valuation_axiom_suite(const ValuationMap<F>& vmap, const TowerElement<F>& witness,
                                  const std::string& attestation, std::uint64_t seed, std::size_t pairs) {
  AxiomReport rep;
  auto add = [&](std::string axiom, std::vector<std::string> inputs, bool pass, std::vector<ValuationValue> ws) {
    AxiomRecord r{std::move(axiom), std::move(inputs), pass, {}};
    for (const auto& w : ws) r.enclosures.push_back("omega=" + to_text(w));
    rep.records.push_back(std::move(r));
  };
  add("unit", {"1"}, vmap(TowerElement<F>(F(1))) == ValuationValue(0), {vmap(TowerElement<F>(F(1)))});
  for (std::size_t i = 0; i < pairs; ++i) {
    Prng rng(derive_seed(seed, i));
    TowerElement<F> x = i == 0 ? TowerElement<F>(F(0)).lift_to(vmap.tower()) : random_tower_element(vmap.tower(), rng);
    TowerElement<F> y = random_tower_element(vmap.tower(), rng);
    const auto wx = vmap(x), wy = vmap(y), wsum = vmap(x + y), wprod = vmap(x * y), wsq = vmap(x * x);
    const std::vector<std::string> in{to_text(x), to_text(y)};
    add("i", {in[0]}, wx.is_infinite() == x.is_zero(), {wx});
    add("ii", in, wsum >= min(wx, wy), {wx, wy, wsum});
    add("iii", in, wprod == wx + wy, {wx, wy, wprod});
    add("iv", {in[0]}, wsq == wx.scaled(Rational(2)), {wx, wsq});
  }
  const auto ww = vmap(witness);
  add("v", {to_text(witness), "attested: " + attestation}, !ww.is_infinite() && ww.value() < 0, {ww});
  return rep;
}

template AxiomReport valuation_axiom_suite(const ValuationMap<Rational>&, const TowerElement<Rational>&,
                                           const std::string&, std::uint64_t, std::size_t);
template AxiomReport valuation_axiom_suite(const ValuationMap<RationalFunction>&,
                                           const TowerElement<RationalFunction>&, const std::string&,
                                           std::uint64_t, std::size_t);

TowerHandle<Rational> random_q_tower(Prng& rng, std::size_t max_depth) {
  static const long pool[] = {-1, 2, 3, 5, 6, 7, 10, 11, -2, -3};
  TowerHandle<Rational> t = TowerNode<Rational>::base();
  const auto depth = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_depth)));
  while (t->depth() < depth) {
    auto r = adjoin_sqrt(t, QAlgebraic(pool[rng.below(std::size(pool))]));
    t = r.tower;
  }
  return t;
}

AxiomReport galois_axiom_suite(const QAlgebraic& witness, const std::string& attestation, std::uint64_t seed,
                               std::size_t pairs, const Rational& tol) {
  AxiomReport rep;
  auto enc_text = [](const RadiusEnclosure& e) { return "[" + to_text(e.lower) + "," + to_text(e.upper) + "]"; };
  auto add = [&](std::string axiom, std::vector<std::string> inputs, bool pass,
                 std::vector<RadiusEnclosure> es) {
    AxiomRecord r{std::move(axiom), std::move(inputs), pass, {}};
    for (const auto& e : es) r.enclosures.push_back(enc_text(e));
    rep.records.push_back(std::move(r));
  };
  auto rho = [&](const QAlgebraic& x) { return galois_radius(x, tol); };

  const auto one = rho(QAlgebraic(1));
  add("unit", {"1"}, one.lower == 1 && one.upper == 1, {one});
  const auto i_unit = adjoin_sqrt(TowerNode<Rational>::base(), QAlgebraic(-1)).root;
  const auto ri = rho(i_unit);
  add("rho(i)=1", {to_text(i_unit)}, ri.contains(Rational(1)), {ri});

  for (std::size_t k = 0; k < pairs; ++k) {
    Prng rng(derive_seed(seed, k));
    auto tower = random_q_tower(rng, 3);
    QAlgebraic x = k == 0 ? QAlgebraic(0).lift_to(tower) : random_tower_element(tower, rng);
    QAlgebraic y = random_tower_element(tower, rng);
    const auto rx = rho(x), ry = rho(y), rsum = rho(x + y), rprod = rho(x * y), rsq = rho(x * x);
    const std::vector<std::string> in{to_text(x), to_text(y)};
    add("i", {in[0]}, x.is_zero() ? rx.upper == 0 : rx.lower > 0, {rx});
    add("ii", in, !(rsum.lower > rx.upper + ry.upper), {rx, ry, rsum});
    add("iii", in, !(rprod.lower > rx.upper * ry.upper), {rx, ry, rprod});
    add("iv", {in[0]}, !(rsq.lower > rx.upper * rx.upper || rsq.upper < rx.lower * rx.lower), {rx, rsq});
  }
  const auto rw = rho(witness);
  add("v", {to_text(witness), "attested: " + attestation}, rw.lower > 1, {rw});
  return rep;
}

}  // namespace widthlab
