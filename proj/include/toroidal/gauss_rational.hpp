#pragma once

// Exact scalars for the whole library: rationals with an int64 fast path
// that promote to boost::multiprecision on overflow, and the Gaussian
// rationals Q(i) built on top of them.  Also the generalized binomial
// used by the delta-calculus mode bridge.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace toroidal {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct division_by_zero : std::domain_error {
  division_by_zero() : std::domain_error("division by zero in exact scalar") {}
};

namespace detail {

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr std::int64_t kNarrowMax = INT64_C(0x3fffffffffffffff);

inline bool narrows(__int128 v) {
  return v <= kNarrowMax && v >= -static_cast<__int128>(kNarrowMax);
}

}  // namespace detail

// Rational number: numerator/denominator in lowest terms, denominator > 0.
// Values that fit comfortably in int64 are stored inline; anything larger
// is promoted to an exact cpp_rational, so no operation ever overflows
// silently.
class Rat {
 public:
  Rat() = default;
  Rat(std::int64_t v) : n_(v) {}  // NOLINT: implicit by design
  Rat(std::int64_t num, std::int64_t den) {
    if (den == 0) throw division_by_zero{};
    __int128 n = num, d = den;
    if (d < 0) { n = -n; d = -d; }
    __int128 g = detail::gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
    n_ = static_cast<std::int64_t>(n);
    d_ = static_cast<std::int64_t>(d);
  }
  explicit Rat(const BigRational& b) { assign_big(b); }

  Rat(const Rat& o) : n_(o.n_), d_(o.d_) {
    if (o.big_) big_ = std::make_unique<BigRational>(*o.big_);
  }
  Rat(Rat&&) noexcept = default;
  Rat& operator=(const Rat& o) {
    if (this != &o) {
      n_ = o.n_;
      d_ = o.d_;
      big_ = o.big_ ? std::make_unique<BigRational>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rat& operator=(Rat&&) noexcept = default;

  bool is_zero() const { return big_ ? big_->is_zero() : n_ == 0; }
  bool is_one() const { return big_ ? *big_ == 1 : (n_ == 1 && d_ == 1); }

  BigRational to_big() const {
    if (big_) return *big_;
    BigRational r(n_);
    r /= d_;
    return r;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) return add_small(a, b, false);
    return Rat(a.to_big() + b.to_big());
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) return add_small(a, b, true);
    return Rat(a.to_big() - b.to_big());
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) {
      if (a.n_ == 0 || b.n_ == 0) return Rat();
      // cross-reduce first so gcd work stays in hardware-width integers
      std::int64_t g1 = std::gcd(a.n_, b.d_);
      std::int64_t g2 = std::gcd(b.n_, a.d_);
      __int128 n = static_cast<__int128>(a.n_ / g1) * (b.n_ / g2);
      __int128 d = static_cast<__int128>(a.d_ / g2) * (b.d_ / g1);
      Rat r;
      if (detail::narrows(n) && detail::narrows(d)) {
        r.n_ = static_cast<std::int64_t>(n);
        r.d_ = static_cast<std::int64_t>(d);
        return r;
      }
      r.big_ = std::make_unique<BigRational>(
          BigRational(to_bigint(n), to_bigint(d)));
      return r;
    }
    return Rat(a.to_big() * b.to_big());
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw division_by_zero{};
    if (!a.big_ && !b.big_) {
      Rat inv;
      if (b.n_ > 0) {
        inv.n_ = b.d_;
        inv.d_ = b.n_;
      } else {
        inv.n_ = -b.d_;
        inv.d_ = -b.n_;
      }
      return a * inv;
    }
    return Rat(a.to_big() / b.to_big());
  }
  Rat operator-() const {
    if (!big_) {
      Rat r;
      r.n_ = -n_;
      r.d_ = d_;
      return r;
    }
    return Rat(BigRational(-*big_));
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    return a.to_big() == b.to_big();
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_)
      return (__int128)a.n_ * b.d_ < (__int128)b.n_ * a.d_;
    return a.to_big() < b.to_big();
  }

  // Exact int64 value when the rational is an integer in range.
  bool to_int(std::int64_t& out) const {
    if (big_) {
      if (boost::multiprecision::denominator(*big_) != 1) return false;
      const BigInt& num = boost::multiprecision::numerator(*big_);
      if (num < -detail::kNarrowMax || num > detail::kNarrowMax) return false;
      out = static_cast<std::int64_t>(num);
      return true;
    }
    if (d_ != 1) return false;
    out = n_;
    return true;
  }

  std::string str() const {
    if (big_) {
      std::string s = boost::multiprecision::numerator(*big_).str();
      if (boost::multiprecision::denominator(*big_) != 1)
        s += "/" + boost::multiprecision::denominator(*big_).str();
      return s;
    }
    std::string s = std::to_string(n_);
    if (d_ != 1) s += "/" + std::to_string(d_);
    return s;
  }

 private:
  static Rat add_small(const Rat& a, const Rat& b, bool negate) {
    if (a.n_ == 0) {
      Rat r;
      r.n_ = negate ? -b.n_ : b.n_;
      r.d_ = b.d_;
      return r;
    }
    if (b.n_ == 0) {
      Rat r;
      r.n_ = a.n_;
      r.d_ = a.d_;
      return r;
    }
    std::int64_t g = std::gcd(a.d_, b.d_);
    std::int64_t bd = b.d_ / g;
    std::int64_t bn = negate ? -b.n_ : b.n_;
    __int128 n = static_cast<__int128>(a.n_) * bd +
                 static_cast<__int128>(bn) * (a.d_ / g);
    __int128 d = static_cast<__int128>(a.d_) * bd;
    // only the common factor g can survive in the numerator
    if (detail::narrows(n) && detail::narrows(d)) {
      std::int64_t nn = static_cast<std::int64_t>(n);
      if (nn == 0) return Rat();
      std::int64_t dd = static_cast<std::int64_t>(d);
      if (g != 1) {
        std::int64_t g2 = std::gcd(nn, g);
        if (g2 != 1) {
          nn /= g2;
          dd /= g2;
        }
      }
      Rat r;
      r.n_ = nn;
      r.d_ = dd;
      return r;
    }
    return from128(n, d);
  }

  static Rat from128(__int128 n, __int128 d) {
    if (d == 0) throw division_by_zero{};
    if (d < 0) { n = -n; d = -d; }
    __int128 g = detail::gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
    Rat r;
    if (detail::narrows(n) && detail::narrows(d)) {
      r.n_ = static_cast<std::int64_t>(n);
      r.d_ = static_cast<std::int64_t>(d);
    } else {
      r.big_ = std::make_unique<BigRational>(BigRational(to_bigint(n), to_bigint(d)));
    }
    return r;
  }
  static BigInt to_bigint(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 a = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    BigInt r = 0;
    BigInt shift = 1;
    while (a > 0) {
      r += BigInt(static_cast<std::uint64_t>(a & 0xffffffffffffffffULL)) * shift;
      a >>= 64;
      shift <<= 64;
    }
    return neg ? BigInt(-r) : r;
  }
  void assign_big(const BigRational& b) {
    const BigInt& num = boost::multiprecision::numerator(b);
    const BigInt& den = boost::multiprecision::denominator(b);
    if (num >= -detail::kNarrowMax && num <= detail::kNarrowMax &&
        den <= detail::kNarrowMax) {
      n_ = static_cast<std::int64_t>(num);
      d_ = static_cast<std::int64_t>(den);
    } else {
      big_ = std::make_unique<BigRational>(b);
    }
  }

  std::int64_t n_ = 0, d_ = 1;
  std::unique_ptr<BigRational> big_;
};

// Element of Q(i).  All state coefficients in the library are of this type.
struct GaussRational {
  Rat re, im;

  GaussRational() = default;
  GaussRational(std::int64_t v) : re(v) {}  // NOLINT
  GaussRational(Rat r) : re(std::move(r)) {}
  GaussRational(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRational unit_i() { return {Rat(0), Rat(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  GaussRational conj() const { return {re, -im}; }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    // most coefficients live on one axis; skip the dead products
    bool ai = a.im.is_zero(), bi = b.im.is_zero();
    if (ai && bi) return {a.re * b.re};
    if (ai) return {a.re * b.re, a.re * b.im};
    if (bi) return {a.re * b.re, a.im * b.re};
    bool ar = a.re.is_zero(), br = b.re.is_zero();
    if (ar && br) return {-(a.im * b.im), Rat()};
    if (ar) return {-(a.im * b.im), a.im * b.re};
    if (br) return {-(a.im * b.im), a.re * b.im};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    Rat nrm = b.re * b.re + b.im * b.im;
    if (nrm.is_zero()) throw division_by_zero{};
    GaussRational num = a * b.conj();
    return {num.re / nrm, num.im / nrm};
  }
  GaussRational operator-() const { return {-re, -im}; }
  GaussRational& operator+=(const GaussRational& o) { return *this = *this + o; }
  GaussRational& operator-=(const GaussRational& o) { return *this = *this - o; }
  GaussRational& operator*=(const GaussRational& o) { return *this = *this * o; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) {
    return !(a == b);
  }
  friend bool operator<(const GaussRational& a, const GaussRational& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }

  // Canonical literal: "a/b", "i", "a/b+c/d i", optional leading sign.
  std::string str() const {
    if (im.is_zero()) return re.str();
    std::string imag;
    if (im.is_one()) {
      imag = "i";
    } else if ((-im).is_one()) {
      imag = "-i";
    } else {
      imag = im.str() + " i";
    }
    if (re.is_zero()) return imag;
    if (imag[0] == '-') return re.str() + " - " + imag.substr(1);
    return re.str() + " + " + imag;
  }
};

// Generalized binomial coefficient p(p-1)...(p-j+1)/j! for integer p of
// either sign; binomial(p, 0) = 1.
inline BigInt binomial(long long p, long long j) {
  if (j < 0) throw std::invalid_argument("binomial: j must be >= 0");
  BigInt num = 1;
  BigInt den = 1;
  for (long long t = 0; t < j; ++t) {
    num *= BigInt(p - t);
    den *= BigInt(t + 1);
  }
  return num / den;  // exact: product of j consecutive integers
}

inline GaussRational binomial_scalar(long long p, long long j) {
  BigInt b = binomial(p, j);
  return GaussRational(Rat(BigRational(b)));
}

}  // namespace toroidal
