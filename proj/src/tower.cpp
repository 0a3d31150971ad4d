#include "widthlab/tower.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "widthlab/errors.hpp"

namespace widthlab {

namespace {

template <class F>
using Vec = std::vector<F>;

template <class F>
bool all_zero(const Vec<F>& v) {
  for (const auto& x : v) {
    if (!(x == F(0))) return false;
  }
  return true;
}

template <class F>
Vec<F> head(const Vec<F>& v) {
  return Vec<F>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2));
}

template <class F>
Vec<F> tail(const Vec<F>& v) {
  return Vec<F>(v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2), v.end());
}

template <class F>
Vec<F> join(Vec<F> u, const Vec<F>& v) {
  u.insert(u.end(), v.begin(), v.end());
  return u;
}

template <class F>
Vec<F> vadd(const Vec<F>& a, const Vec<F>& b) {
  Vec<F> r(a.size(), F(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class F>
Vec<F> vsub(const Vec<F>& a, const Vec<F>& b) {
  Vec<F> r(a.size(), F(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class F>
Vec<F> vneg(const Vec<F>& a) {
  Vec<F> r(a.size(), F(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

template <class F>
Vec<F> vscale(const Vec<F>& a, const F& s) {
  Vec<F> r(a.size(), F(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

template <class F>
Vec<F> mul(const TowerNode<F>* node, const Vec<F>& a, const Vec<F>& b) {
  if (node->depth() == 0) return Vec<F>{a[0] * b[0]};
  const std::size_t h = a.size() / 2;
  const TowerNode<F>* parent = node->parent().get();
  Vec<F> u1 = head(a), v1 = tail(a), u2 = head(b), v2 = tail(b);
  const bool a_low = all_zero(v1);
  const bool b_low = all_zero(v2);
  if (a_low && b_low) return join(mul(parent, u1, u2), Vec<F>(h, F(0)));
  if (a_low) return join(mul(parent, u1, u2), mul(parent, u1, v2));
  if (b_low) return join(mul(parent, u1, u2), mul(parent, v1, u2));
  Vec<F> uu = mul(parent, u1, u2);
  Vec<F> vv = mul(parent, v1, v2);
  Vec<F> u = vadd(uu, mul(parent, node->radicand(), vv));
  Vec<F> v = vadd(mul(parent, u1, v2), mul(parent, v1, u2));
  return join(std::move(u), v);
}

// u^2 - d v^2 in the parent.
template <class F>
Vec<F> relative_norm_vec(const TowerNode<F>* node, const Vec<F>& a) {
  const TowerNode<F>* parent = node->parent().get();
  Vec<F> u = head(a), v = tail(a);
  Vec<F> uu = mul(parent, u, u);
  if (all_zero(v)) return uu;
  return vsub(uu, mul(parent, node->radicand(), mul(parent, v, v)));
}

template <class F>
Vec<F> inv(const TowerNode<F>* node, const Vec<F>& a) {
  if (node->depth() == 0) {
    if (a[0] == F(0)) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    return Vec<F>{F(1) / a[0]};
  }
  const TowerNode<F>* parent = node->parent().get();
  const std::size_t h = a.size() / 2;
  Vec<F> u = head(a), v = tail(a);
  if (all_zero(v)) return join(inv(parent, u), Vec<F>(h, F(0)));
  Vec<F> n_inv = inv(parent, relative_norm_vec(node, a));
  return join(mul(parent, u, n_inv), vneg(mul(parent, v, n_inv)));
}

template <class F>
std::optional<Vec<F>> sqrt_vec(const TowerNode<F>* node, const Vec<F>& a) {
  if (node->depth() == 0) {
    auto r = exact_sqrt(a[0]);
    if (!r) return std::nullopt;
    return Vec<F>{*r};
  }
  if (all_zero(a)) return a;
  const TowerNode<F>* parent = node->parent().get();
  const std::size_t h = a.size() / 2;
  Vec<F> u = head(a), v = tail(a);
  if (all_zero(v)) {
    if (auto r = sqrt_vec(parent, u)) return join(std::move(*r), Vec<F>(h, F(0)));
    // (b s)^2 = b^2 d
    Vec<F> q = mul(parent, u, inv(parent, node->radicand()));
    if (auto r = sqrt_vec(parent, q)) return join(Vec<F>(h, F(0)), *r);
    return std::nullopt;
  }
  // (x + y s)^2 = u + v s  =>  x^2 = (u ± n)/2 with n^2 = u^2 - d v^2, y = v / (2x)
  auto n = sqrt_vec(parent, relative_norm_vec(node, a));
  if (!n) return std::nullopt;
  const F half = F(1) / F(2);
  for (int sign : {1, -1}) {
    Vec<F> x2 = vscale(sign > 0 ? vadd(u, *n) : vsub(u, *n), half);
    auto x = sqrt_vec(parent, x2);
    if (!x || all_zero(*x)) continue;
    Vec<F> y = vscale(mul(parent, v, inv(parent, *x)), half);
    Vec<F> cand = join(*x, y);
    if (mul(node, cand, cand) == a) return cand;
  }
  return std::nullopt;
}

template <class F>
const char* base_name();
template <>
const char* base_name<Rational>() {
  return "Q";
}
template <>
const char* base_name<RationalFunction>() {
  return "Q(t)";
}

}  // namespace

// ---------------------------------------------------------------- TowerNode

template <class F>
const TowerHandle<F>& TowerNode<F>::base() {
  static const TowerHandle<F> root(new TowerNode<F>());
  return root;
}

template <class F>
bool TowerNode<F>::extends(const TowerNode& other) const {
  const TowerNode* n = this;
  while (n != nullptr && n->depth_ > other.depth_) n = n->parent_.get();
  return n == &other;
}

template <class F>
std::vector<const TowerNode<F>*> TowerNode<F>::chain() const {
  std::vector<const TowerNode*> out(depth_ + 1, nullptr);
  const TowerNode* n = this;
  while (n != nullptr) {
    out[n->depth_] = n;
    n = n->parent_.get();
  }
  return out;
}

template <class F>
TowerHandle<F> TowerNode<F>::make_child(TowerHandle<F> parent, std::vector<F> radicand) {
  if (radicand.size() != parent->degree()) {
    throw Error(ErrorKind::PreconditionViolation, "radicand does not live in the parent tower");
  }
  auto node = std::shared_ptr<TowerNode<F>>(new TowerNode<F>());
  node->depth_ = parent->depth_ + 1;
  node->parent_ = std::move(parent);
  node->radicand_ = std::move(radicand);
  return node;
}

template <class F>
TowerHandle<F> common_tower(const TowerHandle<F>& a, const TowerHandle<F>& b) {
  if (a == b) return a;
  if (a->extends(*b)) return a;
  if (b->extends(*a)) return b;
  throw Error(ErrorKind::MixedFieldHandles, "elements live in unrelated towers");
}

// ------------------------------------------------------------- TowerElement

template <class F>
TowerElement<F>::TowerElement(const F& c) : tower_(TowerNode<F>::base()), c_{c} {}

template <class F>
TowerElement<F>::TowerElement(TowerHandle<F> tower, std::vector<F> coeffs)
    : tower_(std::move(tower)), c_(std::move(coeffs)) {
  if (!tower_) throw Error(ErrorKind::PreconditionViolation, "null tower handle");
  if (c_.size() != tower_->degree()) {
    throw Error(ErrorKind::PreconditionViolation, "coefficient count does not match tower degree");
  }
}

template <class F>
TowerElement<F> TowerElement<F>::generator(const TowerHandle<F>& tower) {
  if (tower->depth() == 0) throw Error(ErrorKind::PreconditionViolation, "base tower has no generator");
  std::vector<F> c(tower->degree(), F(0));
  c[tower->degree() / 2] = F(1);
  return TowerElement(tower, std::move(c));
}

template <class F>
bool TowerElement<F>::is_zero() const {
  return all_zero(c_);
}

template <class F>
bool TowerElement<F>::in_base() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (!(c_[i] == F(0))) return false;
  }
  return true;
}

template <class F>
TowerElement<F> TowerElement<F>::lift_to(const TowerHandle<F>& tower) const {
  if (tower == tower_) return *this;
  if (!tower->extends(*tower_)) {
    throw Error(ErrorKind::MixedFieldHandles, "cannot lift into a tower that does not extend this one");
  }
  std::vector<F> c = c_;
  c.resize(tower->degree(), F(0));
  return TowerElement(tower, std::move(c));
}

template <class F>
std::pair<TowerElement<F>, TowerElement<F>> TowerElement<F>::split() const {
  if (depth() == 0) throw Error(ErrorKind::PreconditionViolation, "cannot split a base element");
  return {TowerElement(tower_->parent(), head(c_)), TowerElement(tower_->parent(), tail(c_))};
}

template <class F>
TowerElement<F> TowerElement<F>::conjugate() const {
  if (depth() == 0) return *this;
  return TowerElement(tower_, join(head(c_), vneg(tail(c_))));
}

template <class F>
TowerElement<F> TowerElement<F>::relative_norm() const {
  if (depth() == 0) throw Error(ErrorKind::PreconditionViolation, "relative norm of a base element");
  return TowerElement(tower_->parent(), relative_norm_vec(tower_.get(), c_));
}

template <class F>
TowerElement<F> TowerElement<F>::inverse() const {
  return TowerElement(tower_, inv(tower_.get(), c_));
}

template <class F>
TowerElement<F> TowerElement<F>::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  TowerElement acc = TowerElement(F(1)).lift_to(tower_);
  TowerElement b = *this;
  while (k > 0) {
    if (k & 1) acc = acc * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return acc;
}

template <class F>
TowerElement<F> TowerElement<F>::operator-() const {
  return TowerElement(tower_, vneg(c_));
}

template <class F>
TowerElement<F> TowerElement<F>::add(const TowerElement& a, const TowerElement& b, bool subtract) {
  auto t = common_tower(a.tower_, b.tower_);
  std::vector<F> c = a.c_;
  c.resize(t->degree(), F(0));
  for (std::size_t i = 0; i < b.c_.size(); ++i) {
    if (subtract) {
      c[i] -= b.c_[i];
    } else {
      c[i] += b.c_[i];
    }
  }
  return TowerElement(t, std::move(c));
}

template <class F>
TowerElement<F> TowerElement<F>::multiply(const TowerElement& a, const TowerElement& b) {
  auto t = common_tower(a.tower_, b.tower_);
  if (a.c_.size() == 1) return TowerElement(t, vscale(b.lift_to(t).c_, a.c_[0]));
  if (b.c_.size() == 1) return TowerElement(t, vscale(a.lift_to(t).c_, b.c_[0]));
  // multiply inside the shallower operand's tower when possible
  const auto& ta = a.tower_;
  const auto& tb = b.tower_;
  if (ta == tb) return TowerElement(t, mul(t.get(), a.c_, b.c_));
  return TowerElement(t, mul(t.get(), a.lift_to(t).c_, b.lift_to(t).c_));
}

template <class F>
bool TowerElement<F>::equal(const TowerElement& a, const TowerElement& b) {
  auto t = common_tower(a.tower_, b.tower_);
  const auto& big = a.c_.size() >= b.c_.size() ? a.c_ : b.c_;
  const auto& small = a.c_.size() >= b.c_.size() ? b.c_ : a.c_;
  for (std::size_t i = 0; i < big.size(); ++i) {
    if (i < small.size()) {
      if (!(big[i] == small[i])) return false;
    } else if (!(big[i] == F(0))) {
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------ free functions

template <class F>
std::optional<TowerElement<F>> exact_sqrt(const TowerElement<F>& x) {
  auto r = sqrt_vec(x.tower().get(), x.coeffs());
  if (!r) return std::nullopt;
  return TowerElement<F>(x.tower(), std::move(*r));
}

template <class F>
AdjoinResult<F> adjoin_sqrt(const TowerHandle<F>& tower, const TowerElement<F>& radicand) {
  TowerElement<F> d = radicand.lift_to(tower);
  if (d.is_zero()) throw Error(ErrorKind::ZeroRadicand, "cannot adjoin the square root of zero");
  if (auto r = exact_sqrt(d)) return {tower, *r, true};
  auto child = TowerNode<F>::make_child(tower, d.coeffs());
  return {child, TowerElement<F>::generator(child), false};
}

template <class F>
UniPoly<F> characteristic_poly(const TowerElement<F>& x) {
  const auto chain = x.tower()->chain();
  std::size_t level = x.depth();
  // coefficients of X - x, each a level-`level` vector
  std::vector<Vec<F>> poly;
  poly.push_back(vneg(x.coeffs()));
  Vec<F> one(x.coeffs().size(), F(0));
  one[0] = F(1);
  poly.push_back(one);
  while (level > 0) {
    const TowerNode<F>* node = chain[level];
    std::vector<Vec<F>> conj;
    conj.reserve(poly.size());
    for (const auto& c : poly) conj.push_back(join(head(c), vneg(tail(c))));
    const std::size_t half = poly.front().size() / 2;
    std::vector<Vec<F>> prod(2 * poly.size() - 1, Vec<F>(half, F(0)));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      for (std::size_t j = 0; j < conj.size(); ++j) {
        Vec<F> term = mul(node, poly[i], conj[j]);
        // q * conj(q) is fixed by the conjugation, so the s-part cancels
        prod[i + j] = vadd(prod[i + j], head(term));
      }
    }
    poly = std::move(prod);
    --level;
  }
  std::vector<F> out;
  out.reserve(poly.size());
  for (auto& c : poly) out.push_back(c[0]);
  return UniPoly<F>(std::move(out));
}

template <class F>
F absolute_norm(const TowerElement<F>& x) {
  TowerElement<F> y = x;
  while (y.depth() > 0) y = y.relative_norm();
  return y.base_value();
}

template <class F>
std::string to_text(const TowerElement<F>& x) {
  if (x.depth() == 0) return to_text(x.base_value());
  auto [u, v] = x.split();
  return "(" + to_text(u) + "," + to_text(v) + ")";
}

template <class F>
std::string to_text(const TowerHandle<F>& tower) {
  std::string s = std::string(base_name<F>()) + "[";
  const auto chain = tower->chain();
  for (std::size_t j = 1; j < chain.size(); ++j) {
    if (j > 1) s += ";";
    s += to_text(TowerElement<F>(chain[j]->parent(), chain[j]->radicand()));
  }
  return s + "]";
}

#define WIDTHLAB_INSTANTIATE_TOWER(F)                                                   \
  template class TowerNode<F>;                                                          \
  template class TowerElement<F>;                                                       \
  template TowerHandle<F> common_tower<F>(const TowerHandle<F>&, const TowerHandle<F>&); \
  template std::optional<TowerElement<F>> exact_sqrt<F>(const TowerElement<F>&);        \
  template AdjoinResult<F> adjoin_sqrt<F>(const TowerHandle<F>&, const TowerElement<F>&); \
  template UniPoly<F> characteristic_poly<F>(const TowerElement<F>&);                   \
  template F absolute_norm<F>(const TowerElement<F>&);                                  \
  template std::string to_text<F>(const TowerElement<F>&);                              \
  template std::string to_text<F>(const TowerHandle<F>&);

WIDTHLAB_INSTANTIATE_TOWER(Rational)
WIDTHLAB_INSTANTIATE_TOWER(RationalFunction)

#undef WIDTHLAB_INSTANTIATE_TOWER

}  // namespace widthlab
