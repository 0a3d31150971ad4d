#ifndef WIDTHLAB_FINITE_FIELD_HPP
#define WIDTHLAB_FINITE_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "widthlab/random.hpp"

namespace widthlab {

// Elements of F_{p^n} are integer codes sum c_i p^i, where (c_0, ..., c_{n-1})
// are the coordinates in the power basis of the generator x (root of the
// modulus). The prime-field constant c has code c in every extension.
using FFElem = std::uint64_t;

/// Coefficients over F_p, lowest degree first.
using FpPoly = std::vector<std::uint64_t>;

/// Rabin's test: monic `f` of degree n is irreducible iff X^{p^n} = X mod f
/// and gcd(X^{p^{n/r}} - X, f) = 1 for every prime r dividing n.
bool is_irreducible(std::uint64_t p, const FpPoly& f);

class FiniteField {
 public:
  /// Largest field for which exp/log tables are built.
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

  /// Samples monic degree-n polynomials until one is irreducible. Degree 1
  /// always uses the modulus X.
  static FiniteField make(std::uint64_t p, unsigned n, std::uint64_t seed);

  /// Throws NotPrime, or PreconditionViolation for a reducible modulus.
  FiniteField(std::uint64_t p, FpPoly modulus);

  std::uint64_t p() const { return p_; }
  unsigned degree() const { return n_; }
  std::uint64_t order() const { return q_; }
  const FpPoly& modulus() const { return modulus_; }
  bool has_tables() const { return tables_ != nullptr; }

  FFElem add(FFElem a, FFElem b) const;
  FFElem sub(FFElem a, FFElem b) const;
  FFElem neg(FFElem a) const;
  FFElem mul(FFElem a, FFElem b) const;
  FFElem inv(FFElem a) const;
  FFElem div(FFElem a, FFElem b) const { return mul(a, inv(b)); }
  FFElem pow(FFElem a, std::uint64_t k) const;
  FFElem frobenius(FFElem a) const { return pow(a, p_); }
  /// x^{p^e} = x: membership in the unique subfield of order p^e.
  bool in_subfield(FFElem a, unsigned e) const;

  FFElem generator() const { return n_ == 1 ? 0 : p_; }
  FFElem random(Prng& rng) const { return rng.below(q_); }
  /// A generator of the multiplicative group (smallest code).
  FFElem primitive_element() const { return primitive_; }

  std::vector<std::uint64_t> digits(FFElem a) const;
  FFElem from_digits(const std::vector<std::uint64_t>& d) const;

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }
  friend bool operator!=(const FiniteField& a, const FiniteField& b) { return !(a == b); }

 private:
  struct Tables {
    std::vector<std::uint32_t> exp;
    std::vector<std::uint32_t> log;
  };

  void check(FFElem a) const;
  FFElem mul_slow(FFElem a, FFElem b) const;
  FFElem pow_slow(FFElem a, std::uint64_t k) const;
  FFElem find_primitive() const;

  std::uint64_t p_ = 2;
  unsigned n_ = 1;
  std::uint64_t q_ = 2;
  FpPoly modulus_;
  FFElem primitive_ = 1;
  std::shared_ptr<const Tables> tables_;
};

/// "[c0,c1,...]" coordinates in the power basis.
std::string to_text(const FiniteField& f, FFElem a);
/// "F_p^n:[m0,...,mn]".
std::string to_text(const FiniteField& f);

/// Dimension over F_p of the span of `xs`.
std::size_t fp_rank(const FiniteField& f, const std::vector<FFElem>& xs);

class FieldEmbedding {
 public:
  FieldEmbedding(FiniteField source, FiniteField target, FFElem image_of_generator);

  const FiniteField& source() const { return source_; }
  const FiniteField& target() const { return target_; }
  FFElem image_of_generator() const { return image_; }

  FFElem apply(FFElem a) const;
  /// Images of 1, x, ..., x^{e-1}: an F_p-basis of the embedded subfield.
  const std::vector<FFElem>& image_basis() const { return basis_; }

 private:
  FiniteField source_;
  FiniteField target_;
  FFElem image_;
  std::vector<FFElem> basis_;
};

/// Finds a root of the source modulus inside the target and checks the
/// induced map on 32 random pairs. Throws DegreeNotDividing, NoRootFound, or
/// CapExceeded when the target is too large for subfield enumeration.
FieldEmbedding finite_field_embed(const FiniteField& src, const FiniteField& dst, std::uint64_t seed = 0);

}  // namespace widthlab

#endif  // WIDTHLAB_FINITE_FIELD_HPP
