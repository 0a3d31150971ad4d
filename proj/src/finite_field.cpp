#include "widthlab/finite_field.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "widthlab/errors.hpp"
#include "widthlab/rational.hpp"

namespace widthlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 k, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (k) {
    if (k & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    k >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a modulo b (b nonzero).
FpPoly poly_mod(FpPoly a, const FpPoly& b, u64 p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const u64 lead_inv = invmod(b.back(), p);
  while (a.size() > db) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - db;
    if (c != 0) {
      for (std::size_t j = 0; j <= db; ++j) a[shift + j] = (a[shift + j] + p - mulmod(c, b[j], p)) % p;
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return poly_mod(std::move(r), f, p);
}

FpPoly poly_powmod(FpPoly a, u64 k, const FpPoly& f, u64 p) {
  FpPoly r{1};
  while (k) {
    if (k & 1) r = poly_mulmod(r, a, f, p);
    k >>= 1;
    if (k) a = poly_mulmod(a, a, f, p);
  }
  return r;
}

FpPoly poly_gcd(FpPoly a, FpPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible(std::uint64_t p, const FpPoly& f0) {
  FpPoly f = f0;
  trim(f);
  if (f.size() < 2) return false;
  const u64 n = f.size() - 1;
  if (n == 1) return true;
  // X^{p^k} mod f for k = 1..n
  std::vector<FpPoly> frob(n + 1);
  frob[0] = poly_mod({0, 1}, f, p);
  for (u64 k = 1; k <= n; ++k) frob[k] = poly_powmod(frob[k - 1], p, f, p);
  FpPoly x = frob[0];
  if (frob[n] != x) return false;
  for (u64 r : prime_factors(n)) {
    FpPoly h = frob[n / r];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    if (poly_gcd(h, f, p).size() != 1) return false;
  }
  return true;
}

FiniteField FiniteField::make(std::uint64_t p, unsigned n, std::uint64_t seed) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (n == 0) throw Error(ErrorKind::PreconditionViolation, "extension degree must be at least 1");
  if (n == 1) return FiniteField(p, FpPoly{0, 1});
  Prng rng(seed);
  for (;;) {
    FpPoly f(n + 1, 0);
    f[n] = 1;
    for (unsigned i = 0; i < n; ++i) f[i] = rng.below(p);
    if (is_irreducible(p, f)) return FiniteField(p, std::move(f));
  }
}

FiniteField::FiniteField(std::uint64_t p, FpPoly modulus) : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p >= (u64{1} << 32)) throw Error(ErrorKind::PreconditionViolation, "characteristic too large");
  trim(modulus_);
  if (modulus_.size() < 2 || modulus_.back() != 1) {
    throw Error(ErrorKind::PreconditionViolation, "modulus must be monic of positive degree");
  }
  for (auto c : modulus_) {
    if (c >= p) throw Error(ErrorKind::PreconditionViolation, "modulus coefficient out of range");
  }
  if (!is_irreducible(p, modulus_)) throw Error(ErrorKind::PreconditionViolation, "modulus is reducible");
  n_ = static_cast<unsigned>(modulus_.size() - 1);
  q_ = 1;
  for (unsigned i = 0; i < n_; ++i) {
    if (q_ > (u64{1} << 62) / p) throw Error(ErrorKind::CapExceeded, "field order exceeds 2^62");
    q_ *= p;
  }
  if (q_ <= kTableLimit) {
    primitive_ = find_primitive();
    auto t = std::make_shared<Tables>();
    t->exp.resize(q_ - 1);
    t->log.assign(q_, 0);
    FFElem x = 1;
    for (u64 i = 0; i + 1 < q_; ++i) {
      t->exp[i] = static_cast<std::uint32_t>(x);
      t->log[x] = static_cast<std::uint32_t>(i);
      x = mul_slow(x, primitive_);
    }
    tables_ = std::move(t);
  } else {
    primitive_ = 0;
  }
}

void FiniteField::check(FFElem a) const {
  if (a >= q_) throw Error(ErrorKind::MixedFieldHandles, "element code outside the field");
}

std::vector<std::uint64_t> FiniteField::digits(FFElem a) const {
  check(a);
  std::vector<u64> d(n_, 0);
  for (unsigned i = 0; i < n_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

FFElem FiniteField::from_digits(const std::vector<std::uint64_t>& d) const {
  FFElem a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i] % p_;
  check(a);
  return a;
}

FFElem FiniteField::add(FFElem a, FFElem b) const {
  check(a);
  check(b);
  if (p_ == 2) return a ^ b;
  FFElem r = 0, scale = 1;
  for (unsigned i = 0; i < n_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

FFElem FiniteField::neg(FFElem a) const {
  check(a);
  if (p_ == 2) return a;
  FFElem r = 0, scale = 1;
  for (unsigned i = 0; i < n_; ++i) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

FFElem FiniteField::sub(FFElem a, FFElem b) const { return add(a, neg(b)); }

FFElem FiniteField::mul_slow(FFElem a, FFElem b) const {
  FpPoly r = poly_mulmod(digits(a), digits(b), modulus_, p_);
  return from_digits(r);
}

FFElem FiniteField::mul(FFElem a, FFElem b) const {
  check(a);
  check(b);
  if (a == 0 || b == 0) return 0;
  if (tables_) {
    u64 e = u64{tables_->log[a]} + tables_->log[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return tables_->exp[e];
  }
  return mul_slow(a, b);
}

FFElem FiniteField::pow_slow(FFElem a, std::uint64_t k) const {
  FFElem r = 1;
  while (k) {
    if (k & 1) r = mul_slow(r, a);
    k >>= 1;
    if (k) a = mul_slow(a, a);
  }
  return r;
}

FFElem FiniteField::pow(FFElem a, std::uint64_t k) const {
  check(a);
  if (k == 0) return 1;
  if (a == 0) return 0;
  if (tables_) return tables_->exp[static_cast<u128>(tables_->log[a]) * k % (q_ - 1)];
  return pow_slow(a, k % (q_ - 1) == 0 ? q_ - 1 : k % (q_ - 1));
}

FFElem FiniteField::inv(FFElem a) const {
  check(a);
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero in a finite field");
  if (tables_) return tables_->exp[(q_ - 1 - tables_->log[a]) % (q_ - 1)];
  return pow_slow(a, q_ - 2);
}

bool FiniteField::in_subfield(FFElem a, unsigned e) const {
  FFElem x = a;
  for (unsigned i = 0; i < e; ++i) x = frobenius(x);
  return x == a;
}

FFElem FiniteField::find_primitive() const {
  if (q_ == 2) return 1;
  const auto factors = prime_factors(q_ - 1);
  for (FFElem g = 2; g < q_; ++g) {
    bool ok = true;
    for (u64 r : factors) {
      if (pow_slow(g, (q_ - 1) / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw Error(ErrorKind::NoRootFound, "no primitive element found");
}

std::string to_text(const FiniteField& f, FFElem a) {
  std::string s = "[";
  const auto d = f.digits(a);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + "]";
}

std::string to_text(const FiniteField& f) {
  std::string s = "F_" + std::to_string(f.p()) + "^" + std::to_string(f.degree()) + ":[";
  for (std::size_t i = 0; i < f.modulus().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f.modulus()[i]);
  }
  return s + "]";
}

std::size_t fp_rank(const FiniteField& f, const std::vector<FFElem>& xs) {
  const u64 p = f.p();
  std::vector<std::vector<u64>> rows;
  rows.reserve(xs.size());
  for (FFElem x : xs) rows.push_back(f.digits(x));
  std::size_t rank = 0;
  for (unsigned col = 0; col < f.degree() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const u64 inv = invmod(rows[rank][col], p);
    for (auto& c : rows[rank]) c = mulmod(c, inv, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const u64 c = rows[r][col];
      for (unsigned j = 0; j < f.degree(); ++j) rows[r][j] = (rows[r][j] + p - mulmod(c, rows[rank][j], p)) % p;
    }
    ++rank;
  }
  return rank;
}

FieldEmbedding::FieldEmbedding(FiniteField source, FiniteField target, FFElem image_of_generator)
    : source_(std::move(source)), target_(std::move(target)), image_(image_of_generator) {
  if (source_.p() != target_.p()) throw Error(ErrorKind::PreconditionViolation, "characteristics differ");
  if (target_.degree() % source_.degree() != 0) {
    throw Error(ErrorKind::DegreeNotDividing, std::to_string(source_.degree()) + " does not divide " +
                                                  std::to_string(target_.degree()));
  }
  FFElem x = 1;
  for (unsigned i = 0; i < source_.degree(); ++i) {
    basis_.push_back(x);
    x = target_.mul(x, image_);
  }
  // x now holds r^e; it must agree with the reduction of the modulus
  FFElem expect = 0;
  FFElem power = 1;
  const auto& m = source_.modulus();
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    expect = target_.sub(expect, target_.mul(m[i], power));
    power = target_.mul(power, image_);
  }
  if (source_.degree() > 1 && x != expect) {
    throw Error(ErrorKind::NoRootFound, "image is not a root of the source modulus");
  }
}

FFElem FieldEmbedding::apply(FFElem a) const {
  const auto d = source_.digits(a);
  FFElem r = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] != 0) r = target_.add(r, target_.mul(d[i], basis_[i]));
  }
  return r;
}

FieldEmbedding finite_field_embed(const FiniteField& src, const FiniteField& dst, std::uint64_t seed) {
  if (src.p() != dst.p()) throw Error(ErrorKind::PreconditionViolation, "characteristics differ");
  if (dst.degree() % src.degree() != 0) {
    throw Error(ErrorKind::DegreeNotDividing,
                std::to_string(src.degree()) + " does not divide " + std::to_string(dst.degree()));
  }
  if (src.degree() == 1) return FieldEmbedding(src, dst, 0);
  if (!dst.has_tables()) throw Error(ErrorKind::CapExceeded, "target field too large for root search");
  const auto& m = src.modulus();
  auto eval = [&](FFElem x) {
    FFElem acc = 0;
    for (std::size_t i = m.size(); i-- > 0;) acc = dst.add(dst.mul(acc, x), m[i]);
    return acc;
  };
  // the order-p^e subfield is {0} together with the powers of h
  const u64 sub_order = src.order();
  const FFElem h = dst.pow(dst.primitive_element(), (dst.order() - 1) / (sub_order - 1));
  FFElem best = 0;
  bool found = false;
  FFElem x = 1;
  for (u64 i = 0; i + 1 < sub_order; ++i) {
    if (eval(x) == 0 && (!found || x < best)) {
      best = x;
      found = true;
    }
    x = dst.mul(x, h);
  }
  if (!found) throw Error(ErrorKind::NoRootFound, "source modulus has no root in the target");
  FieldEmbedding emb(src, dst, best);
  Prng rng(seed);
  for (int i = 0; i < 32; ++i) {
    FFElem a = src.random(rng), b = src.random(rng);
    if (emb.apply(src.add(a, b)) != dst.add(emb.apply(a), emb.apply(b)) ||
        emb.apply(src.mul(a, b)) != dst.mul(emb.apply(a), emb.apply(b))) {
      throw Error(ErrorKind::NoRootFound, "embedding failed the homomorphism spot check");
    }
  }
  return emb;
}

}  // namespace widthlab
