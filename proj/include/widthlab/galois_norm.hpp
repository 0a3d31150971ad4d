#ifndef WIDTHLAB_GALOIS_NORM_HPP
#define WIDTHLAB_GALOIS_NORM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "widthlab/rational.hpp"
#include "widthlab/random.hpp"
#include "widthlab/rational_function.hpp"
#include "widthlab/tower.hpp"
#include "widthlab/valuation.hpp"

namespace widthlab {

/// lower <= (max modulus) <= upper.
struct RadiusEnclosure {
  Rational lower;
  Rational upper;
  unsigned doublings = 0;  // Graeffe steps used; 0 when exact

  bool exact() const { return lower == upper; }
  bool contains(const Rational& r) const { return lower <= r && r <= upper; }
};

/// Doubling cap for root_radius.
inline constexpr unsigned kMaxGraeffeSteps = 24;

/// Maximum modulus of the complex roots of p. Graeffe root squaring on the
/// primitive integer form, with two-sided coefficient bounds after each step,
/// until (upper - lower) / max(lower, 1) <= tol. Throws ZeroPolynomial, or
/// TolTooTight if the doubling cap is reached first.
RadiusEnclosure root_radius(const QPoly& p, const Rational& tol);

/// An element of a tower over Q with its characteristic polynomial.
struct AlgebraicNumber {
  QAlgebraic element;
  QPoly charpoly;

  explicit AlgebraicNumber(QAlgebraic x) : element(std::move(x)), charpoly(characteristic_poly(element)) {}
};

/// Max modulus over the conjugates of x, i.e. the roots of its characteristic polynomial.
RadiusEnclosure galois_radius(const AlgebraicNumber& x, const Rational& tol);
inline RadiusEnclosure galois_radius(const QAlgebraic& x, const Rational& tol) {
  return galois_radius(AlgebraicNumber(x), tol);
}

// X^2 + (alpha/gamma) X + beta/gamma with ell | alpha, ell | beta, ell^2 ∤ beta
// and ell ∤ gamma, hence irreducible over Q.
struct EisensteinQuadratic {
  Integer alpha;
  Integer beta;
  Integer gamma;
  std::uint64_t ell = 2;
  // certified real root intervals
  Rational small_lower, small_upper;
  Rational large_lower, large_upper;
  /// Upper bound on the distance from each root to its target.
  Rational epsilon;

  QPoly poly() const;
  /// Discriminant (alpha/gamma)^2 - 4 beta/gamma.
  Rational discriminant() const;
};

/// Searches gamma = 1, 2, ... (coprime to ell), taking the nearest admissible
/// alpha and beta, and returns the first quadratic whose coefficients are
/// within tol of -(a+b) and ab and whose roots are within tol of a and b.
/// Requires 0 < a < 1 < b. Throws TolTooTight once gamma exceeds gamma_cap.
EisensteinQuadratic eisenstein_near(const Rational& a, const Rational& b, const Rational& tol, std::uint64_t ell,
                                    std::uint64_t gamma_cap = 10000000);

/// The smaller root as an element of Q(sqrt(disc)).
QAlgebraic eisenstein_small_root(const EisensteinQuadratic& q);

struct AxiomRecord {
  std::string axiom;
  std::vector<std::string> inputs;
  bool pass = true;
  std::vector<std::string> enclosures;
};

struct AxiomReport {
  std::vector<AxiomRecord> records;

  std::size_t violations() const;
  /// One JSON object per record: {axiom, inputs, verdict, enclosures}.
  std::string to_jsonl() const;
};

// Checks of the five norm axioms: (i) |x| = 0 iff x = 0, (ii) |x+y| <= |x|+|y|,
// (iii) |xy| <= |x||y|, (iv) |x^2| = |x|^2, (v) |w| > 1 for the witness, plus
// |1| = 1. The witness is attested by the caller to represent a real number
// in [0, 1]; the attestation text is copied into the report.

/// omega-based norm |x| = exp(-omega(x)) on random elements of vmap's tower.
template <class F>
AxiomReport valuation_axiom_suite(const ValuationMap<F>& vmap, const TowerElement<F>& witness,
                                  const std::string& attestation, std::uint64_t seed, std::size_t pairs = 1000);

/// Galois radius on random towers over Q of degree <= 8. A comparison only
/// counts as a violation when the enclosures prove it; also checks rho(i) = 1.
AxiomReport galois_axiom_suite(const QAlgebraic& witness, const std::string& attestation, std::uint64_t seed,
                               std::size_t pairs = 1000, const Rational& tol = Rational(1, 100));

/// A tower over Q with up to max_depth random quadratic levels.
TowerHandle<Rational> random_q_tower(Prng& rng, std::size_t max_depth);

}  // namespace widthlab

#endif  // WIDTHLAB_GALOIS_NORM_HPP
