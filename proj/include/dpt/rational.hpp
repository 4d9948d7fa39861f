#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "dpt/error.hpp"

namespace dpt {

namespace detail {

using int128 = __int128;

inline int128 abs128(int128 x) { return x < 0 ? -x : x; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t narrow64(int128 v) {
  if (v > int128(std::numeric_limits<std::int64_t>::max()) ||
      v < int128(std::numeric_limits<std::int64_t>::min()))
    throw NumericFailure("rational overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

// Exact fraction with 64-bit reduced numerator/denominator, denominator > 0.
// Intermediates use 128-bit arithmetic; a result that does not reduce back
// into 64 bits throws NumericFailure rather than wrapping.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit
  Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  static Rational make(detail::int128 n, detail::int128 d) {
    if (d == 0) throw InvalidArgument("rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    detail::int128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rational r;
    r.num_ = detail::narrow64(n);
    r.den_ = detail::narrow64(d);
    return r;
  }

  // Exact value of the double (every finite double is a dyadic rational).
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw InvalidArgument("rational: non-finite double");
    if (x == 0.0) return Rational();
    int e = 0;
    double m = std::frexp(x, &e);
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));  // |mant| in [2^52, 2^53)
    int shift = 53 - e;
    while ((mant & 1) == 0 && shift > 0) {
      mant >>= 1;
      --shift;
    }
    if (shift >= 0) {
      if (shift > 62) throw NumericFailure("rational: denominator exceeds 2^62");
      return make(mant, detail::int128(1) << shift);
    }
    return make(detail::int128(mant) << (-shift), 1);
  }

  // Parses "p/q", "-3", "0.05", "12.", ".5". Decimal forms are exact.
  static Rational parse(const std::string& s) {
    if (s.empty()) throw InvalidArgument("rational: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      std::int64_t p = parse_int(s.substr(0, slash));
      std::int64_t q = parse_int(s.substr(slash + 1));
      return make(p, q);
    }
    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
    detail::int128 value = 0;
    detail::int128 den = 1;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
      char ch = s[i];
      if (ch == '.') {
        if (seen_dot) throw InvalidArgument("rational: bad literal '" + s + "'");
        seen_dot = true;
        continue;
      }
      if (ch < '0' || ch > '9') throw InvalidArgument("rational: bad literal '" + s + "'");
      seen_digit = true;
      value = value * 10 + (ch - '0');
      if (seen_dot) den *= 10;
      if (den > (detail::int128(1) << 100) || value > (detail::int128(1) << 100))
        throw NumericFailure("rational: literal too long");
    }
    if (!seen_digit) throw InvalidArgument("rational: bad literal '" + s + "'");
    return make(neg ? -value : value, den);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(detail::int128(a.num_) * b.den_ + detail::int128(b.num_) * a.den_,
                detail::int128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(detail::int128(a.num_) * b.den_ - detail::int128(b.num_) * a.den_,
                detail::int128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(detail::int128(a.num_) * b.num_, detail::int128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InvalidArgument("rational: division by zero");
    return make(detail::int128(a.num_) * b.den_, detail::int128(a.den_) * b.num_);
  }
  Rational operator-() const { return make(-detail::int128(num_), den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    detail::int128 l = detail::int128(a.num_) * b.den_;
    detail::int128 r = detail::int128(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

 private:
  static std::int64_t parse_int(const std::string& t) {
    if (t.empty()) throw InvalidArgument("rational: bad literal");
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(t, &pos);
    } catch (const std::exception&) {
      throw InvalidArgument("rational: bad literal '" + t + "'");
    }
    if (pos != t.size()) throw InvalidArgument("rational: bad literal '" + t + "'");
    return v;
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

// ceil(q * m) for q >= 0, m >= 0.
inline std::int64_t ceil_times(const Rational& q, std::int64_t m) {
  if (q.sign() < 0 || m < 0) throw InvalidArgument("ceil_times: negative input");
  detail::int128 n = detail::int128(q.num()) * m;
  detail::int128 d = q.den();
  return detail::narrow64((n + d - 1) / d);
}

}  // namespace dpt
