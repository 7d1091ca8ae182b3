#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>

namespace summa {

using Rational = mpq_class;

// p/q in canonical form
Rational make_rational(long p, long q);

/// Closed interval of doubles. Each operation rounds to nearest and then
/// widens by one ulp per side, which encloses the exact real result.
class Interval {
 public:
  Interval() = default;
  Interval(double lo, double hi);
  static Interval point(double v) { return Interval(v, v); }
  static Interval enclose(const Rational& q);

  double lower() const { return lo_; }
  double upper() const { return hi_; }
  bool contains(const Rational& q) const;
  bool contains(const Interval& other) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const { return Interval(-hi_, -lo_); }
  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval abs(const Interval& x);
Interval sqrt(const Interval& x);
Interval hull(const Interval& a, const Interval& b);

enum class ArithMode { Exact, Interval };
enum class Truth { False, True, Unknown };

const char* to_string(ArithMode mode);
ArithMode parse_mode(std::string_view text);

/// A real quantity: an exact rational, or an interval enclosing the value.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(int v) : v_(Rational(v)) {}
  Scalar(long v) : v_(Rational(v)) {}
  Scalar(unsigned long v) : v_(Rational(v)) {}
  Scalar(const Rational& q) : v_(q) {}
  Scalar(const Interval& iv) : v_(iv) {}

  // Accepts "p", "p/q", "-p/q", "sqrt(r)", and products or quotients of
  // those such as "1/2*sqrt(3)" or "sqrt(2)/2". Irrational values require
  // interval mode.
  static Scalar parse(std::string_view text, ArithMode mode);
  static Scalar ratio(long p, long q) { return Scalar(make_rational(p, q)); }

  bool is_exact() const { return std::holds_alternative<Rational>(v_); }
  const Rational& exact() const;
  Interval enclosure() const;
  Scalar in_mode(ArithMode mode) const;
  bool is_zero() const;
  int certain_sign() const;  // -1, 0, 1, or 2 when undetermined
  double approx() const;
  std::string str() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  // Structural equality: same representation and same value.
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  std::variant<Rational, Interval> v_;
};

Scalar abs(const Scalar& x);
Scalar max(const Scalar& a, const Scalar& b);
Scalar min(const Scalar& a, const Scalar& b);

Truth less(const Scalar& a, const Scalar& b);
Truth less_equal(const Scalar& a, const Scalar& b);
Truth equal(const Scalar& a, const Scalar& b);
inline bool certainly_le(const Scalar& a, const Scalar& b) { return less_equal(a, b) == Truth::True; }
inline bool certainly_lt(const Scalar& a, const Scalar& b) { return less(a, b) == Truth::True; }
inline bool certainly_equal(const Scalar& a, const Scalar& b) { return equal(a, b) == Truth::True; }

// Simplest rational (least denominator, then least magnitude) in [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

// Exact inputs: the simplest rational in [lo, hi]. Otherwise the hull.
Scalar recognize(const Scalar& lo, const Scalar& hi);

}  // namespace summa
