#include "summa/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "summa/errors.hpp"

namespace summa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double v) { return std::nextafter(v, -kInf); }
double up(double v) { return std::nextafter(v, kInf); }

Interval widen(double lo, double hi) { return Interval(down(lo), up(hi)); }

}  // namespace

Rational make_rational(long p, long q) {
  if (q == 0) throw ArithmeticError("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo <= hi)) throw ArithmeticError("interval with lower > upper");
}

Interval Interval::enclose(const Rational& q) {
  double d = q.get_d();
  int c = cmp(q, d);
  if (c == 0) return point(d);
  return c < 0 ? Interval(down(d), d) : Interval(d, up(d));
}

bool Interval::contains(const Rational& q) const { return cmp(q, lo_) >= 0 && cmp(q, hi_) <= 0; }

bool Interval::contains(const Interval& other) const {
  return lo_ <= other.lo_ && other.hi_ <= hi_;
}

Interval operator+(const Interval& a, const Interval& b) {
  return widen(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

Interval operator-(const Interval& a, const Interval& b) {
  return widen(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

Interval operator*(const Interval& a, const Interval& b) {
  double p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  return widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo_ <= 0.0 && b.hi_ >= 0.0) throw ArithmeticError("interval division by an interval containing 0");
  double p[4] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
  return widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

Interval abs(const Interval& x) {
  if (x.lower() >= 0) return x;
  if (x.upper() <= 0) return -x;
  return Interval(0.0, std::max(-x.lower(), x.upper()));
}

Interval sqrt(const Interval& x) {
  if (x.upper() < 0) throw ArithmeticError("sqrt of a negative interval");
  double lo = std::max(0.0, x.lower());
  return Interval(std::max(0.0, down(std::sqrt(lo))), up(std::sqrt(x.upper())));
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lower(), b.lower()), std::max(a.upper(), b.upper()));
}

const char* to_string(ArithMode mode) { return mode == ArithMode::Exact ? "exact" : "interval"; }

ArithMode parse_mode(std::string_view text) {
  if (text == "exact") return ArithMode::Exact;
  if (text == "interval") return ArithMode::Interval;
  throw SchemaError("unknown arithmetic mode '" + std::string(text) + "'");
}

// ---- parsing -------------------------------------------------------------

namespace {

class LiteralParser {
 public:
  LiteralParser(std::string_view text, ArithMode mode) : s_(text), mode_(mode) {}

  Scalar run() {
    skip();
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    Scalar value = factor();
    while (true) {
      skip();
      char c = peek();
      if (c == '*') {
        ++pos_;
        value *= factor();
      } else if (c == '/') {
        ++pos_;
        Scalar f = factor();
        if (f.is_zero()) fail("division by zero");
        value /= f;
      } else {
        break;
      }
    }
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing characters");
    return negative ? -value : value;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw SchemaError("bad scalar literal '" + std::string(s_) + "': " + why);
  }

  Rational integer() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Rational(mpz_class(std::string(s_.substr(start, pos_ - start))));
  }

  // Exact rational p or p/q used inside sqrt(...).
  Rational radicand() {
    Rational q = integer();
    skip();
    if (peek() == '/') {
      ++pos_;
      Rational den = integer();
      if (den == 0) fail("zero denominator");
      q /= den;
    }
    return q;
  }

  Scalar factor() {
    skip();
    if (s_.substr(pos_, 5) == "sqrt(") {
      pos_ += 5;
      Rational r = radicand();
      skip();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return square_root(r);
    }
    return Scalar(integer());
  }

  Scalar square_root(const Rational& r) {
    mpz_class num = r.get_num(), den = r.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
      mpz_class a, b;
      mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
      Rational q(a, b);
      q.canonicalize();
      return mode_ == ArithMode::Exact ? Scalar(q) : Scalar(Interval::enclose(q));
    }
    if (mode_ == ArithMode::Exact) {
      throw ModeError("literal '" + std::string(s_) + "' is irrational; use interval mode");
    }
    return Scalar(sqrt(Interval::enclose(r)));
  }

  std::string_view s_;
  ArithMode mode_;
  size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text, ArithMode mode) {
  Scalar v = LiteralParser(text, mode).run();
  return v.in_mode(mode);
}

// ---- representation -----------------------------------------------------

const Rational& Scalar::exact() const {
  if (auto* q = std::get_if<Rational>(&v_)) return *q;
  throw ModeError("exact value requested from an interval scalar");
}

Interval Scalar::enclosure() const {
  if (auto* q = std::get_if<Rational>(&v_)) return Interval::enclose(*q);
  return std::get<Interval>(v_);
}

Scalar Scalar::in_mode(ArithMode mode) const {
  if (mode == ArithMode::Interval && is_exact()) return Scalar(enclosure());
  if (mode == ArithMode::Exact && !is_exact()) throw ModeError("interval scalar in exact mode");
  return *this;
}

bool Scalar::is_zero() const {
  if (auto* q = std::get_if<Rational>(&v_)) return *q == 0;
  const auto& iv = std::get<Interval>(v_);
  return iv.lower() == 0.0 && iv.upper() == 0.0;
}

int Scalar::certain_sign() const {
  if (auto* q = std::get_if<Rational>(&v_)) return sgn(*q);
  const auto& iv = std::get<Interval>(v_);
  if (iv.lower() > 0) return 1;
  if (iv.upper() < 0) return -1;
  if (iv.lower() == 0 && iv.upper() == 0) return 0;
  return 2;
}

double Scalar::approx() const {
  if (auto* q = std::get_if<Rational>(&v_)) return q->get_d();
  const auto& iv = std::get<Interval>(v_);
  return 0.5 * (iv.lower() + iv.upper());
}

std::string Scalar::str() const {
  if (auto* q = std::get_if<Rational>(&v_)) return q->get_str();
  const auto& iv = std::get<Interval>(v_);
  std::ostringstream os;
  os.precision(17);
  os << '[' << iv.lower() << ',' << iv.upper() << ']';
  return os.str();
}

namespace {

template <class ExactOp, class IntervalOp>
void combine(std::variant<Rational, Interval>& a, const std::variant<Rational, Interval>& b,
             ExactOp exact_op, IntervalOp interval_op) {
  auto* qa = std::get_if<Rational>(&a);
  auto* qb = std::get_if<Rational>(&b);
  if (qa && qb) {
    exact_op(*qa, *qb);
    return;
  }
  Interval ia = qa ? Interval::enclose(*qa) : std::get<Interval>(a);
  Interval ib = qb ? Interval::enclose(*qb) : std::get<Interval>(b);
  a = interval_op(ia, ib);
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  combine(v_, o.v_, [](Rational& x, const Rational& y) { x += y; },
          [](const Interval& x, const Interval& y) { return x + y; });
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  combine(v_, o.v_, [](Rational& x, const Rational& y) { x -= y; },
          [](const Interval& x, const Interval& y) { return x - y; });
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  combine(v_, o.v_, [](Rational& x, const Rational& y) { x *= y; },
          [](const Interval& x, const Interval& y) { return x * y; });
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  combine(
      v_, o.v_,
      [](Rational& x, const Rational& y) {
        if (y == 0) throw ArithmeticError("division by zero");
        x /= y;
      },
      [](const Interval& x, const Interval& y) { return x / y; });
  return *this;
}

Scalar Scalar::operator-() const {
  if (auto* q = std::get_if<Rational>(&v_)) return Scalar(Rational(-*q));
  return Scalar(-std::get<Interval>(v_));
}

bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }

Scalar abs(const Scalar& x) {
  if (x.is_exact()) return Scalar(Rational(::abs(x.exact())));
  return Scalar(abs(x.enclosure()));
}

Scalar max(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() >= b.exact() ? a : b;
  Interval x = a.enclosure(), y = b.enclosure();
  return Scalar(Interval(std::max(x.lower(), y.lower()), std::max(x.upper(), y.upper())));
}

Scalar min(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() <= b.exact() ? a : b;
  Interval x = a.enclosure(), y = b.enclosure();
  return Scalar(Interval(std::min(x.lower(), y.lower()), std::min(x.upper(), y.upper())));
}

Truth less(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() < b.exact() ? Truth::True : Truth::False;
  Interval x = a.enclosure(), y = b.enclosure();
  if (x.upper() < y.lower()) return Truth::True;
  if (x.lower() >= y.upper()) return Truth::False;
  return Truth::Unknown;
}

Truth less_equal(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() <= b.exact() ? Truth::True : Truth::False;
  Interval x = a.enclosure(), y = b.enclosure();
  if (x.upper() <= y.lower()) return Truth::True;
  if (x.lower() > y.upper()) return Truth::False;
  return Truth::Unknown;
}

Truth equal(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact() ? Truth::True : Truth::False;
  Interval x = a.enclosure(), y = b.enclosure();
  if (x.upper() < y.lower() || y.upper() < x.lower()) return Truth::False;
  if (x.lower() == x.upper() && x == y) return Truth::True;
  return Truth::Unknown;
}

namespace {

Rational floor_of(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

// 0 < lo <= hi
Rational simplest_positive(const Rational& lo, const Rational& hi) {
  Rational f = floor_of(lo);
  if (f == lo) return lo;
  if (f + 1 <= hi) return Rational(f + 1);
  Rational inner = simplest_positive(Rational(1 / (hi - f)), Rational(1 / (lo - f)));
  return Rational(f + 1 / inner);
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw ArithmeticError("simplest_between on an empty interval");
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return Rational(-simplest_positive(Rational(-hi), Rational(-lo)));
  return simplest_positive(lo, hi);
}

Scalar recognize(const Scalar& lo, const Scalar& hi) {
  if (lo.is_exact() && hi.is_exact()) return Scalar(simplest_between(lo.exact(), hi.exact()));
  return Scalar(hull(lo.enclosure(), hi.enclosure()));
}

}  // namespace summa
