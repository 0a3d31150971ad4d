#ifndef WIDTHLAB_WIDTH_HPP
#define WIDTHLAB_WIDTH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "widthlab/galois_norm.hpp"
#include "widthlab/tower.hpp"
#include "widthlab/valuation.hpp"

namespace widthlab {

enum class GroupTag { SL, GL, SO2 };
std::string to_text(GroupTag tag);

/// Square matrix over a tower, row-major, with the group invariant checked at
/// construction: det = 1 (SL), det != 0 (GL), or [[a, b], [-b, a]] with
/// a^2 + b^2 = 1 (SO2).
template <class F>
class GroupMatrix {
 public:
  using Entry = TowerElement<F>;

  GroupMatrix(std::size_t n, std::vector<Entry> entries, GroupTag tag);

  static GroupMatrix identity(std::size_t n, GroupTag tag = GroupTag::SL);
  /// I + mu e_ij (0-based indices, i != j).
  static GroupMatrix elementary(std::size_t n, std::size_t i, std::size_t j, const Entry& mu);
  /// The identity with lambda^-1 at (i, i) and lambda at (j, j); D(lambda) for n = 2.
  static GroupMatrix torus(std::size_t n, std::size_t i, std::size_t j, const Entry& lambda);
  /// diag(lambda, 1, ..., 1), tagged GL.
  static GroupMatrix gl_diagonal(std::size_t n, const Entry& lambda);
  static GroupMatrix rotation(const Entry& a, const Entry& b);

  std::size_t n() const { return n_; }
  GroupTag tag() const { return tag_; }
  const Entry& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
  const std::vector<Entry>& entries() const { return e_; }

  bool is_identity() const;
  Entry det() const;
  GroupMatrix inverse() const;
  /// h^-1 g h.
  GroupMatrix conjugated_by(const GroupMatrix& h) const { return h.inverse() * *this * h; }

  /// Throws DimensionMismatch. The tag of the product is the weaker of the two.
  friend GroupMatrix operator*(const GroupMatrix& a, const GroupMatrix& b) { return multiply(a, b); }
  friend bool operator==(const GroupMatrix& a, const GroupMatrix& b) { return equal(a, b); }
  friend bool operator!=(const GroupMatrix& a, const GroupMatrix& b) { return !equal(a, b); }

 private:
  struct Unchecked {};
  GroupMatrix(Unchecked, std::size_t n, std::vector<Entry> entries, GroupTag tag)
      : n_(n), e_(std::move(entries)), tag_(tag) {}
  static GroupMatrix multiply(const GroupMatrix& a, const GroupMatrix& b);
  static bool equal(const GroupMatrix& a, const GroupMatrix& b);

  std::size_t n_;
  std::vector<Entry> e_;
  GroupTag tag_;
};

/// "[[a,b],[c,d]]" with entries in tower text form.
template <class F>
std::string to_text(const GroupMatrix<F>& g);

template <class F>
struct ValuationBall {
  ValuationMap<F> vmap;
  Rational r;
};

struct RadiusBall {
  Rational C;
  Rational tol = Rational(1, 64);  // starting enclosure tolerance
};

// S = matrices of the tagged group whose entries lie in the ball B. With
// extra_gl_diagonals the GL generating set also contains diag(lambda, 1, ...)
// for lambda in B.
template <class F>
struct GeneratorSpec {
  std::variant<ValuationBall<F>, RadiusBall> mode;
  GroupTag tag = GroupTag::SL;
  bool extra_gl_diagonals = false;

  /// Requires r >= 1 or C >= 2.
  static GeneratorSpec valuation_ball(ValuationMap<F> vmap, Rational r, GroupTag tag = GroupTag::SL);
  static GeneratorSpec radius_ball(Rational C, GroupTag tag = GroupTag::SO2);

  bool is_valuation() const { return mode.index() == 0; }
  const ValuationBall<F>& ball() const { return std::get<0>(mode); }
  const RadiusBall& radius() const { return std::get<1>(mode); }
};

template <class F>
std::string to_text(const GeneratorSpec<F>& spec);

template <class F>
struct Word {
  std::size_t n = 2;
  GroupTag tag = GroupTag::SL;
  std::vector<GroupMatrix<F>> factors;

  std::size_t length() const { return factors.size(); }
};

/// Exact ordered product; the identity for the empty word.
template <class F>
GroupMatrix<F> word_evaluate(const Word<F>& w);

/// Entry-wise ball membership. Radius mode refines enclosures up to a cap and
/// throws EnclosureInconclusive if an entry still straddles C.
template <class F>
bool is_in_S(const GroupMatrix<F>& g, const GeneratorSpec<F>& spec);

struct ConventionCheck {
  std::string lambda;
  std::string mu;
  std::string expected;
  bool pass = false;
};

/// Verifies E12(mu)^D(lambda) = E12(lambda^2 mu) with g^h = h^-1 g h on fixed
/// and seeded samples over Q(t), plus products of up to 4 torus elements.
std::vector<ConventionCheck> conjugation_convention_check(std::uint64_t seed = 0, std::size_t samples = 20);

/// Integer n with |v - 2n| <= 1; ties go to the smaller |n|.
long conjugation_exponent(const Rational& v);

/// E_ij(alpha) as D_ij(lambda)^-n E_ij(mu) D_ij(lambda)^n with mu = alpha lambda^-2n.
/// Valuation mode only; omega(lambda) must be 1 (LambdaNotUniformizer).
template <class F>
Word<F> factor_elementary(std::size_t n, std::size_t i, std::size_t j, const TowerElement<F>& alpha,
                          const TowerElement<F>& lambda, const GeneratorSpec<F>& spec);

template <class F>
Word<F> factor_E12(const TowerElement<F>& alpha, const TowerElement<F>& lambda, const GeneratorSpec<F>& spec) {
  return factor_elementary(2, 0, 1, alpha, lambda, spec);
}

template <class F>
struct Transvection {
  std::size_t i;
  std::size_t j;
  TowerElement<F> mu;
};

/// Transvections whose ordered product is g, by elimination without row
/// swaps. Throws NotSL.
template <class F>
std::vector<Transvection<F>> elementary_decomposition(const GroupMatrix<F>& g);

/// Empty for the identity, [g] when g is already in S, otherwise the
/// elementary decomposition with each factor conjugated into S.
template <class F>
Word<F> factor_slN(const GroupMatrix<F>& g, const GeneratorSpec<F>& spec, const TowerElement<F>& lambda);

/// g = diag(det g, 1, ..., 1) h with h in SL_n. Throws Singular.
template <class F>
Word<F> factor_glN(const GroupMatrix<F>& g, const GeneratorSpec<F>& spec, const TowerElement<F>& lambda);

/// Valuation mode: every entry of a product of k elements of S has
/// omega >= -k r, so the bound is ceil(max(-omega) / r), at least 1 for g != I.
/// Radius mode: least k with 2^(k-1) C^k >= the largest entry lower bound.
template <class F>
long width_lower_bound(const GroupMatrix<F>& g, const GeneratorSpec<F>& spec);

/// The two-sided |omega| reading of the lower bound, ceil(max |omega| / r).
/// Kept for comparison only: cancellation lets positive valuations grow
/// faster than one per factor, so this is not a valid lower bound.
template <class F>
long abs_valuation_bound(const GroupMatrix<F>& g, const GeneratorSpec<F>& spec);

template <class F>
struct WidthCertificate {
  GroupMatrix<F> target;
  long lower_bound = 0;
  std::optional<Word<F>> upper_word;
};

/// verified = the word multiplies out to the target, every factor is in S,
/// and the length is at least the lower bound. Always recomputed.
template <class F>
bool verify_certificate(const WidthCertificate<F>& cert, const GeneratorSpec<F>& spec);

/// JSON object {target, spec, lower_bound, word, verified}.
template <class F>
std::string certificate_json(const WidthCertificate<F>& cert, const GeneratorSpec<F>& spec);

// ---------------------------------------------------------------- SO(2)

template <class F>
struct SO2Root {
  GroupMatrix<F> w;
  TowerHandle<F> tower;
};

/// w with w^2 = z, adjoining sqrt((1 + a)/2) when needed. -I maps to [[0,1],[-1,0]].
template <class F>
SO2Root<F> so2_sqrt(const GroupMatrix<F>& z);

template <class F>
struct SO2Generation {
  Word<F> word;            // 2^k copies of the root
  unsigned k = 0;          // number of square roots taken
  GeneratorSpec<F> spec;   // the input spec, with the valuation extended over new levels
};

/// Takes square roots until the root lies in S; throws KMaxExceeded.
template <class F>
SO2Generation<F> so2_generate(const GroupMatrix<F>& z, const GeneratorSpec<F>& spec, unsigned k_max,
                              std::uint64_t seed = 0);

struct ValuationWitness {
  GroupMatrix<RationalFunction> z;
  ValuationMap<RationalFunction> vmap;
};

/// a = t^(-2^n), b = sqrt(1 - a^2) over Q(t).
ValuationWitness so2_witness_valuation(unsigned n, std::uint64_t seed = 0);

struct GaloisWitness {
  GroupMatrix<Rational> z;
  EisensteinQuadratic quadratic;
  RadiusEnclosure rho_a;
};

/// x = small root of eisenstein_near(1/2, 2, 1/1000, 2), a = x^(2^n), b = sqrt(1 - a^2).
GaloisWitness so2_witness_galois(unsigned n, const Rational& tol = Rational(1, 1000));

/// 2^(k-1) C^k.
Rational entry_growth_bound(long k, const Rational& C);
/// n^(k-1) c^k with c = n^2 D^2 C.
Rational embedded_growth_bound(long k, long n, const Rational& D, const Rational& C);

struct GrowthReport {
  std::size_t words = 0;
  std::size_t violations = 0;
  std::vector<std::string> details;  // one line per violation
};

/// Random words of length 1..max_len in S: valuation mode on Q(t) with r = 1
/// checks max |omega(entry)| <= k; radius mode with C = 2 checks every entry
/// upper bound against 2^(k-1) C^k.
GrowthReport growth_check_valuation(std::size_t words, std::size_t max_len, std::uint64_t seed);
GrowthReport growth_check_radius(std::size_t words, std::size_t max_len, std::uint64_t seed);

/// A random element of SL_2(Q(t)) with every |omega(entry)| <= 1.
GroupMatrix<RationalFunction> random_valuation_generator(Prng& rng);
/// A rational rotation or a rational SL_2 matrix with entries in [-2, 2],
/// conjugated by a random signed permutation.
GroupMatrix<Rational> random_radius_generator(Prng& rng);

}  // namespace widthlab

#endif  // WIDTHLAB_WIDTH_HPP
