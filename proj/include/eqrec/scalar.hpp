#pragma once

// Exact field elements: rationals (int64 fast path, GMP fallback) and
// residues modulo a prime.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "eqrec/errors.hpp"

namespace eqrec {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline bool fits64(i128 v) {
  return v >= static_cast<i128>(INT64_MIN) + 1 && v <= static_cast<i128>(INT64_MAX);
}

inline BigInt to_big(i128 v) {
  bool neg = v < 0;
  u128 m = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  BigInt hi = static_cast<std::uint64_t>(m >> 64);
  BigInt r = (hi << 64) + static_cast<std::uint64_t>(m);
  return neg ? BigInt(-r) : r;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % p);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// An element of Q or of F_p.
///
/// Rationals are kept in lowest terms with a positive denominator. Values that
/// fit in 64 bits live inline; anything larger moves to a shared GMP rational
/// and moves back as soon as it fits again, so equality is a field compare.
/// Residues are canonical in [0, p). A rational integer meeting a residue is
/// reduced into F_p first, which lets literal constants such as `Scalar{}`
/// (zero) mix freely with either field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long v) : num_(v) {}  // NOLINT: implicit integer literals are intended

  static Scalar rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZero("zero denominator");
    return from_big(BigRational(num, den));
  }

  static Scalar residue(long long value, std::uint64_t p) {
    Scalar s;
    long long m = static_cast<long long>(p);
    long long r = value % m;
    if (r < 0) r += m;
    s.num_ = r;
    s.modulus_ = p;
    return s;
  }

  std::uint64_t modulus() const { return modulus_; }
  bool is_residue() const { return modulus_ != 0; }

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }

  /// Reduces a rational into F_p; identity on residues of the same prime.
  Scalar in_prime_field(std::uint64_t p) const {
    if (modulus_ == p) return *this;
    if (modulus_ != 0) throw FieldMismatch("residues of different primes");
    long long n, d;
    if (big_) {
      BigInt bn = boost::multiprecision::numerator(*big_) % BigInt(p);
      BigInt bd = boost::multiprecision::denominator(*big_) % BigInt(p);
      n = bn.convert_to<long long>();
      d = bd.convert_to<long long>();
    } else {
      n = num_ % static_cast<long long>(p);
      d = den_ % static_cast<long long>(p);
    }
    if (d == 0) throw DivisionByZero("denominator vanishes modulo " + std::to_string(p));
    Scalar r = residue(n, p);
    Scalar dr = residue(d, p);
    return r * dr.inverse();
  }

  Scalar operator-() const {
    if (modulus_) return residue(num_ == 0 ? 0 : static_cast<long long>(modulus_) - num_, modulus_);
    if (big_) return from_big(-*big_);
    Scalar r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.modulus_ || b.modulus_) return mod_op(a, b, '+');
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) return from128(static_cast<detail::i128>(a.num_) + b.num_, 1);
      return from128(static_cast<detail::i128>(a.num_) * b.den_ + static_cast<detail::i128>(b.num_) * a.den_,
                     static_cast<detail::i128>(a.den_) * b.den_);
    }
    return from_big(a.big() + b.big());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.modulus_ || b.modulus_) return mod_op(a, b, '*');
    if (a.is_zero() || b.is_zero()) return Scalar{};
    if (!a.big_ && !b.big_) {
      return from128(static_cast<detail::i128>(a.num_) * b.num_, static_cast<detail::i128>(a.den_) * b.den_);
    }
    return from_big(a.big() * b.big());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    if (modulus_) return residue(static_cast<long long>(detail::pow_mod(num_, modulus_ - 2, modulus_)), modulus_);
    if (big_) return from_big(1 / *big_);
    return from128(den_, num_);
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.modulus_ != b.modulus_) {
      std::uint64_t p = a.modulus_ ? a.modulus_ : b.modulus_;
      if (a.modulus_ && b.modulus_) return false;
      return a.in_prime_field(p).num_ == b.in_prime_field(p).num_;
    }
    if (a.big_ || b.big_) {
      if (!a.big_ || !b.big_) return false;
      return *a.big_ == *b.big_;
    }
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  BigInt numerator() const {
    if (big_) return boost::multiprecision::numerator(*big_);
    return BigInt(num_);
  }
  BigInt denominator() const {
    if (big_) return boost::multiprecision::denominator(*big_);
    return BigInt(den_);
  }

  /// "n", "n/d" for rationals; the residue as a decimal integer for F_p.
  std::string to_string() const {
    if (big_) {
      BigInt n = boost::multiprecision::numerator(*big_);
      BigInt d = boost::multiprecision::denominator(*big_);
      return d == 1 ? n.str() : n.str() + "/" + d.str();
    }
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  long long num_ = 0;
  long long den_ = 1;
  std::uint64_t modulus_ = 0;
  std::shared_ptr<const BigRational> big_;

  BigRational big() const {
    if (big_) return *big_;
    return BigRational(BigInt(num_), BigInt(den_));
  }

  static Scalar from_big(const BigRational& q) {
    const BigInt& n = boost::multiprecision::numerator(q);
    const BigInt& d = boost::multiprecision::denominator(q);
    static const BigInt lo = BigInt(INT64_MIN) + 1;
    static const BigInt hi = BigInt(INT64_MAX);
    if (n >= lo && n <= hi && d <= hi) {
      Scalar s;
      s.num_ = n.convert_to<long long>();
      s.den_ = d.convert_to<long long>();
      return s;
    }
    Scalar s;
    s.big_ = std::make_shared<const BigRational>(q);
    return s;
  }

  static Scalar from128(detail::i128 n, detail::i128 d) {
    if (d == 0) throw DivisionByZero("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Scalar{};
    if (d != 1) {
      detail::i128 g = detail::gcd128(n, d);
      if (g > 1) {
        n /= g;
        d /= g;
      }
    }
    if (detail::fits64(n) && detail::fits64(d)) {
      Scalar s;
      s.num_ = static_cast<long long>(n);
      s.den_ = static_cast<long long>(d);
      return s;
    }
    return from_big(BigRational(detail::to_big(n), detail::to_big(d)));
  }

  static Scalar mod_op(const Scalar& a, const Scalar& b, char op) {
    std::uint64_t p = a.modulus_ ? a.modulus_ : b.modulus_;
    Scalar x = a.in_prime_field(p);
    Scalar y = b.in_prime_field(p);
    std::uint64_t u = static_cast<std::uint64_t>(x.num_);
    std::uint64_t v = static_cast<std::uint64_t>(y.num_);
    Scalar r;
    r.modulus_ = p;
    if (op == '+') {
      std::uint64_t s = u + v;
      r.num_ = static_cast<long long>(s >= p ? s - p : s);
    } else {
      r.num_ = static_cast<long long>(detail::mul_mod(u, v, p));
    }
    return r;
  }
};

/// The ground field: Q or F_p with p prime.
class Field {
 public:
  static Field rationals() { return Field{}; }

  static Field prime(std::uint64_t p) {
    if (!is_prime(p)) throw InvalidField("modulus " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 62)) throw InvalidField("modulus too large");
    Field f;
    f.p_ = p;
    return f;
  }

  bool is_rational() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }

  Scalar zero() const { return from_int(0); }
  Scalar one() const { return from_int(1); }
  Scalar from_int(long long v) const { return p_ ? Scalar::residue(v, p_) : Scalar(v); }

  /// Brings any scalar into this field (rationals reduce mod p).
  Scalar coerce(const Scalar& s) const {
    if (p_ == 0) {
      if (s.is_residue()) throw FieldMismatch("residue used where a rational is expected");
      return s;
    }
    return s.in_prime_field(p_);
  }

  /// Accepts "n", "-n", "n/d".
  Scalar parse(std::string_view text) const {
    auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) {
        return coerce(Scalar::rational(BigInt(std::string(text)), BigInt(1)));
      }
      BigInt n(std::string(text.substr(0, slash)));
      BigInt d(std::string(text.substr(slash + 1)));
      return coerce(Scalar::rational(n, d));
    } catch (const std::runtime_error& e) {
      throw InvalidScalar("cannot parse scalar '" + std::string(text) + "': " + e.what());
    }
  }

  std::string name() const { return p_ ? "F_" + std::to_string(p_) : "Q"; }

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

  static bool is_prime(std::uint64_t n) {
    // Deterministic Miller-Rabin for 64-bit inputs.
    if (n < 2) return false;
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
      if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
      d >>= 1;
      ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
      std::uint64_t x = detail::pow_mod(a, d, n);
      if (x == 1 || x == n - 1) continue;
      bool composite = true;
      for (int r = 1; r < s; ++r) {
        x = detail::mul_mod(x, x, n);
        if (x == n - 1) {
          composite = false;
          break;
        }
      }
      if (composite) return false;
    }
    return true;
  }

 private:
  std::uint64_t p_ = 0;
};

}  // namespace eqrec
