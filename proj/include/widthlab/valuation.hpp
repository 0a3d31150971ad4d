#ifndef WIDTHLAB_VALUATION_HPP
#define WIDTHLAB_VALUATION_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "widthlab/rational.hpp"
#include "widthlab/rational_function.hpp"
#include "widthlab/tower.hpp"

namespace widthlab {

/// A rational valuation or +infinity (the valuation of 0).
class ValuationValue {
 public:
  ValuationValue() = default;
  ValuationValue(const Rational& v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  ValuationValue(long v) : v_(v) {}            // NOLINT(google-explicit-constructor)
  static ValuationValue infinity() {
    ValuationValue x;
    x.inf_ = true;
    return x;
  }

  bool is_infinite() const { return inf_; }
  /// Throws PreconditionViolation for infinity.
  const Rational& value() const;

  /// |v| <= r, with infinity counting as inside.
  bool abs_at_most(const Rational& r) const { return inf_ || abs(v_) <= r; }

  friend ValuationValue operator+(const ValuationValue& a, const ValuationValue& b);
  ValuationValue scaled(const Rational& s) const;

  friend bool operator==(const ValuationValue& a, const ValuationValue& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend std::strong_ordering operator<=>(const ValuationValue& a, const ValuationValue& b);

 private:
  bool inf_ = false;
  Rational v_;
};

inline ValuationValue min(const ValuationValue& a, const ValuationValue& b) { return b < a ? b : a; }

/// "inf" or "num/den" (den = 1 included).
std::string to_text(const ValuationValue& v);
ValuationValue valuation_from_text(std::string_view text);

/// Order of vanishing at t = 0, so nu(t) = 1.
ValuationValue t_adic_valuation(const RationalFunction& x);
/// Throws NotPrime.
ValuationValue p_adic_valuation(const Rational& x, std::uint64_t p);

/// The norm |x| = exp(-omega(x)), kept as omega.
struct LogNorm {
  ValuationValue omega;
  friend bool operator<=(const LogNorm& a, const LogNorm& b) { return a.omega >= b.omega; }
};

enum class ValuationKind { TAdic, PAdic };

struct LevelCertificate {
  enum class Kind { Ramified, ValidatedBySampling };
  Kind kind = Kind::Ramified;
  ValuationValue omega_generator;  // omega(s_j) = omega(d_j)/2
  std::size_t samples = 0;         // validation pairs checked
};

std::string to_text(LevelCertificate::Kind kind);

// A valuation on the base field together with its extension to every level
// of a fixed tower. Levels whose radicand has valuation outside twice the
// current value group are ramified and the extension is unique. Otherwise the
// candidate omega(x) = omega(N(x))/2 is accepted only after a seeded sampling
// check of additivity and the ultrametric inequality.
template <class F>
class ValuationMap {
 public:
  /// t-adic on Q(t) (F = RationalFunction only).
  static ValuationMap t_adic();
  /// p-adic on Q (F = Rational only).
  static ValuationMap p_adic(std::uint64_t p);

  ValuationKind kind() const { return kind_; }
  std::uint64_t prime() const { return p_; }
  const TowerHandle<F>& tower() const { return tower_; }
  const std::vector<LevelCertificate>& certificates() const { return certs_; }
  /// Values lie in 2^-g Z.
  unsigned granularity_exponent() const { return g_; }

  ValuationValue base(const F& x) const;
  /// Throws NotCovered if x lives outside this map's tower.
  ValuationValue operator()(const TowerElement<F>& x) const;

  template <class G>
  friend ValuationMap<G> extend_to_tower(const ValuationMap<G>& base_val, const TowerHandle<G>& tower,
                                         std::uint64_t seed);

 private:
  ValuationValue eval(std::size_t level, const std::vector<F>& c) const;

  ValuationKind kind_ = ValuationKind::TAdic;
  std::uint64_t p_ = 0;
  TowerHandle<F> tower_;
  std::vector<const TowerNode<F>*> chain_;
  std::vector<LevelCertificate> certs_;  // certs_[j-1] describes level j
  unsigned g_ = 0;
};

/// Number of sample pairs used per non-ramified level.
inline constexpr std::size_t kValidationSamples = 500;

/// Extends `base_val` over the remaining levels of `tower`, which must extend
/// base_val.tower(). Throws NonUniqueExtension if sampling finds a violation.
template <class F>
ValuationMap<F> extend_to_tower(const ValuationMap<F>& base_val, const TowerHandle<F>& tower,
                                std::uint64_t seed = 0);

template <class F>
ValuationValue tower_valuation(const ValuationMap<F>& vmap, const TowerElement<F>& x) {
  return vmap(x);
}

/// |omega(x)| <= r, evaluated exactly.
template <class F>
bool norm_compare_inside(const ValuationMap<F>& vmap, const TowerElement<F>& x, const Rational& r) {
  return vmap(x).abs_at_most(r);
}

}  // namespace widthlab

#endif  // WIDTHLAB_VALUATION_HPP
