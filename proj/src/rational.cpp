#include "widthlab/rational.hpp"

#include <algorithm>
#include <string>

#include "widthlab/errors.hpp"

namespace widthlab {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::MixedFieldHandles: return "MixedFieldHandles";
    case ErrorKind::ZeroRadicand: return "ZeroRadicand";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DegreeNotDividing: return "DegreeNotDividing";
    case ErrorKind::NoRootFound: return "NoRootFound";
    case ErrorKind::NonUniqueExtension: return "NonUniqueExtension";
    case ErrorKind::NotCovered: return "NotCovered";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::TolTooTight: return "TolTooTight";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::EnclosureInconclusive: return "EnclosureInconclusive";
    case ErrorKind::LambdaNotUniformizer: return "LambdaNotUniformizer";
    case ErrorKind::NotSL: return "NotSL";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::KMaxExceeded: return "KMaxExceeded";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_text(const Integer& x) { return x.get_str(10); }

std::string to_text(const Rational& x) { return x.get_str(10); }

Rational rational_from_text(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
  if (r.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

Rational pow(const Rational& x, unsigned long k) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), x.get_num_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), k);
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& x, long k) {
  if (k >= 0) return pow(x, static_cast<unsigned long>(k));
  if (x == 0) throw Error(ErrorKind::DivisionByZero, "negative power of zero");
  Rational inv = 1 / x;
  return pow(inv, static_cast<unsigned long>(-k));
}

Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

std::optional<Integer> exact_sqrt(const Integer& x) {
  if (x < 0) return std::nullopt;
  if (mpz_perfect_square_p(x.get_mpz_t()) == 0) return std::nullopt;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

std::optional<Rational> exact_sqrt(const Rational& x) {
  auto n = exact_sqrt(Integer(x.get_num()));
  if (!n) return std::nullopt;
  auto d = exact_sqrt(Integer(x.get_den()));
  if (!d) return std::nullopt;
  Rational r(*n, *d);
  r.canonicalize();
  return r;
}

namespace {

long approx_log2(const Rational& a) {
  return static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 2));
}

// a * 2^shift, floored to an integer.
Integer floor_scaled(const Rational& a, long shift) {
  Integer n = a.get_num();
  Integer d = a.get_den();
  if (shift >= 0) {
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else {
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

// m / 2^b for a possibly negative b.
Rational dyadic(const Integer& m, long b) {
  Rational r;
  if (b >= 0) {
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(b));
    r = Rational(m, den);
  } else {
    Integer num;
    mpz_mul_2exp(num.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(-b));
    r = Rational(num);
  }
  r.canonicalize();
  return r;
}

struct RootParts {
  Integer r;
  long b;
};

RootParts root_floor(const Rational& a, unsigned long k, unsigned bits) {
  const long lg = approx_log2(a);
  // choose b so that the root mantissa carries about `bits` bits
  long b = static_cast<long>(bits) + 2 - (lg >= 0 ? lg / static_cast<long>(k)
                                                  : -((-lg + static_cast<long>(k) - 1) /
                                                      static_cast<long>(k)));
  Integer y = floor_scaled(a, b * static_cast<long>(k));
  Integer r;
  mpz_root(r.get_mpz_t(), y.get_mpz_t(), k);
  return {r, b};
}

}  // namespace

Rational root_lower(const Rational& a, unsigned long k, unsigned bits) {
  if (a < 0) throw Error(ErrorKind::PreconditionViolation, "root of a negative rational");
  if (k == 0) throw Error(ErrorKind::PreconditionViolation, "zeroth root");
  if (a == 0) return Rational(0);
  if (k == 1) return a;
  auto [r, b] = root_floor(a, k, bits);
  return dyadic(r, b);
}

Rational root_upper(const Rational& a, unsigned long k, unsigned bits) {
  if (a < 0) throw Error(ErrorKind::PreconditionViolation, "root of a negative rational");
  if (k == 0) throw Error(ErrorKind::PreconditionViolation, "zeroth root");
  if (a == 0) return Rational(0);
  if (k == 1) return a;
  auto [r, b] = root_floor(a, k, bits);
  return dyadic(r + 1, b);
}

Rational round_down(const Rational& x, unsigned bits) {
  if (x == 0) return x;
  if (x < 0) return -round_up(-x, bits);
  long b = static_cast<long>(bits) + 1 - approx_log2(x);
  return dyadic(floor_scaled(x, b), b);
}

Rational round_up(const Rational& x, unsigned bits) {
  if (x == 0) return x;
  if (x < 0) return -round_down(-x, bits);
  long b = static_cast<long>(bits) + 1 - approx_log2(x);
  Integer m = floor_scaled(x, b);
  Rational r = dyadic(m, b);
  if (r < x) r = dyadic(m + 1, b);
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % q == 0) return n == q;
  }
  if (n < (1ULL << 32)) {
    for (std::uint64_t q = 17; q * q <= n; q += 2) {
      if (n % q == 0) return false;
    }
    return true;
  }
  Integer z(std::to_string(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

std::string decimal_text(const Rational& x, int digits, bool round_up) {
  if (x == 0) return "0";
  const bool neg = x < 0;
  Rational ax = neg ? Rational(-x) : x;
  // exponent e with 10^e <= ax < 10^(e+1)
  long e = static_cast<long>(mpz_sizeinbase(ax.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(ax.get_den_mpz_t(), 10));
  auto ten_pow = [](long k) {
    Integer t;
    mpz_ui_pow_ui(t.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? Rational(Integer(1), t) : Rational(t);
  };
  while (ax < ten_pow(e)) --e;
  while (ax >= ten_pow(e + 1)) ++e;
  Rational scaled = ax * ten_pow(digits - 1 - e);
  scaled.canonicalize();
  // outward rounding: away from zero when rounding up on a positive value
  const bool away = (round_up != neg);
  Integer m = away ? ceil(scaled) : floor(scaled);
  long exp10 = e - (digits - 1);
  std::string ds = m.get_str(10);
  if (static_cast<long>(ds.size()) > digits) {  // carried into a new digit
    exp10 += static_cast<long>(ds.size()) - digits;
    ds.resize(static_cast<std::size_t>(digits));
  }
  std::string out;
  const long point = static_cast<long>(ds.size()) + exp10;  // digits before the decimal point
  if (point > 12 || point < -6) {
    out = ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += "e" + std::to_string(point - 1);
  } else if (point <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-point), '0') + ds;
  } else if (point >= static_cast<long>(ds.size())) {
    out = ds + std::string(static_cast<std::size_t>(point) - ds.size(), '0');
  } else {
    out = ds.substr(0, static_cast<std::size_t>(point)) + "." +
          ds.substr(static_cast<std::size_t>(point));
  }
  while (out.find('.') != std::string::npos && out.find('e') == std::string::npos &&
         out.back() == '0') {
    out.pop_back();
  }
  if (!out.empty() && out.back() == '.') out.pop_back();
  return neg ? "-" + out : out;
}

}  // namespace widthlab
