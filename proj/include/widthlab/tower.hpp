#ifndef WIDTHLAB_TOWER_HPP
#define WIDTHLAB_TOWER_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "widthlab/rational.hpp"
#include "widthlab/rational_function.hpp"
#include "widthlab/unipoly.hpp"

namespace widthlab {

// Towers of square-root extensions K_0 ⊂ K_1 ⊂ ... ⊂ K_L over a base field
// F (Q or Q(t)), with K_j = K_{j-1}(s_j) and s_j^2 = d_j ∈ K_{j-1}.
//
// A tower is a chain of immutable nodes; each node knows its parent. An
// element of K_L is stored as a flat vector of 2^L base coefficients laid
// out as the tree u + v*s_L with u, v ∈ K_{L-1} (u first, then v). Lifting an
// element to a deeper node therefore just pads with zeros.

template <class F>
class TowerNode;
template <class F>
using TowerHandle = std::shared_ptr<const TowerNode<F>>;

template <class F>
class TowerNode {
 public:
  /// The 0-level tower, shared by every element of F.
  static const TowerHandle<F>& base();

  std::size_t depth() const { return depth_; }
  std::size_t degree() const { return std::size_t{1} << depth_; }
  const TowerHandle<F>& parent() const { return parent_; }
  /// Coefficients of d_depth as an element of the parent tower.
  const std::vector<F>& radicand() const { return radicand_; }

  /// True if `other` lies on the chain below this node (or is this node).
  bool extends(const TowerNode& other) const;

  /// Nodes from the base (index 0) down to this node.
  std::vector<const TowerNode*> chain() const;

  static TowerHandle<F> make_child(TowerHandle<F> parent, std::vector<F> radicand);

 private:
  TowerNode() = default;

  TowerHandle<F> parent_;
  std::vector<F> radicand_;
  std::size_t depth_ = 0;
};

template <class F>
class TowerElement {
 public:
  TowerElement() : TowerElement(F(0)) {}
  TowerElement(const F& c);  // NOLINT(google-explicit-constructor)
  TowerElement(long c) : TowerElement(F(c)) {}  // NOLINT(google-explicit-constructor)
  TowerElement(TowerHandle<F> tower, std::vector<F> coeffs);

  /// The adjoined square root s_L of the deepest level of `tower`.
  static TowerElement generator(const TowerHandle<F>& tower);

  const TowerHandle<F>& tower() const { return tower_; }
  const std::vector<F>& coeffs() const { return c_; }
  std::size_t depth() const { return tower_->depth(); }

  bool is_zero() const;
  /// True if the value lies in F; `base_value()` then returns it.
  bool in_base() const;
  const F& base_value() const { return c_.front(); }

  TowerElement lift_to(const TowerHandle<F>& tower) const;
  /// (u, v) with this = u + v*s_L, both in the parent tower.
  std::pair<TowerElement, TowerElement> split() const;
  /// u - v*s_L.
  TowerElement conjugate() const;
  /// u^2 - d_L v^2 in the parent tower.
  TowerElement relative_norm() const;

  TowerElement inverse() const;
  TowerElement pow(long k) const;

  TowerElement operator-() const;
  TowerElement& operator+=(const TowerElement& o) { return *this = *this + o; }
  TowerElement& operator-=(const TowerElement& o) { return *this = *this - o; }
  TowerElement& operator*=(const TowerElement& o) { return *this = *this * o; }

  friend TowerElement operator+(const TowerElement& a, const TowerElement& b) { return add(a, b, false); }
  friend TowerElement operator-(const TowerElement& a, const TowerElement& b) { return add(a, b, true); }
  friend TowerElement operator*(const TowerElement& a, const TowerElement& b) { return multiply(a, b); }
  friend TowerElement operator/(const TowerElement& a, const TowerElement& b) {
    return multiply(a, b.inverse());
  }
  /// Equality after lifting to the common tower.
  friend bool operator==(const TowerElement& a, const TowerElement& b) { return equal(a, b); }
  friend bool operator!=(const TowerElement& a, const TowerElement& b) { return !equal(a, b); }

 private:
  static TowerElement add(const TowerElement& a, const TowerElement& b, bool subtract);
  static TowerElement multiply(const TowerElement& a, const TowerElement& b);
  static bool equal(const TowerElement& a, const TowerElement& b);

  TowerHandle<F> tower_;
  std::vector<F> c_;
};

/// The deeper of two towers on the same chain; MixedFieldHandles otherwise.
template <class F>
TowerHandle<F> common_tower(const TowerHandle<F>& a, const TowerHandle<F>& b);

/// Exact square root inside x's tower, if one exists.
template <class F>
std::optional<TowerElement<F>> exact_sqrt(const TowerElement<F>& x);

template <class F>
struct AdjoinResult {
  TowerHandle<F> tower;
  TowerElement<F> root;  // root^2 == radicand
  bool reused = false;   // the radicand was already a square
};

template <class F>
AdjoinResult<F> adjoin_sqrt(const TowerHandle<F>& tower, const TowerElement<F>& radicand);

/// Characteristic polynomial of multiplication by x on x's tower, over F.
/// Degree 2^depth; its roots are the conjugates of x.
template <class F>
UniPoly<F> characteristic_poly(const TowerElement<F>& x);

/// Norm of x from its tower down to F.
template <class F>
F absolute_norm(const TowerElement<F>& x);

/// Nested pair tree: base text at depth 0, "(u,v)" above.
template <class F>
std::string to_text(const TowerElement<F>& x);
/// "[d_1;d_2;...]" listing radicands; "[]" for the base.
template <class F>
std::string to_text(const TowerHandle<F>& tower);

using QAlgebraic = TowerElement<Rational>;
using QtAlgebraic = TowerElement<RationalFunction>;

}  // namespace widthlab

#endif  // WIDTHLAB_TOWER_HPP
