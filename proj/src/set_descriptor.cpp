#include "summa/set_descriptor.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "summa/errors.hpp"

namespace summa {

namespace {

std::size_t checked_lcm(std::size_t a, std::size_t b) {
  std::size_t l = std::lcm(a, b);
  if (l > SetDescriptor::kMaxPeriod || l < a || l < b)
    throw SchemaError("set descriptor period exceeds " + std::to_string(SetDescriptor::kMaxPeriod));
  return l;
}

}  // namespace

SetDescriptor::SetDescriptor() : pattern_(1, false) {}

template <class Pred>
SetDescriptor SetDescriptor::build(std::size_t threshold, std::size_t period, Pred member) {
  if (period == 0 || period > kMaxPeriod)
    throw SchemaError("set descriptor period exceeds " + std::to_string(kMaxPeriod));
  SetDescriptor s;
  s.threshold_ = threshold;
  s.prefix_.resize(threshold);
  for (std::size_t n = 0; n < threshold; ++n) s.prefix_[n] = member(n);
  s.period_ = period;
  s.pattern_.assign(period, false);
  // residue r is represented by the first n >= threshold with n = r mod period
  for (std::size_t i = 0; i < period; ++i) {
    std::size_t n = threshold + i;
    s.pattern_[n % period] = member(n);
  }
  s.normalize();
  return s;
}

void SetDescriptor::normalize() {
  for (std::size_t p = 1; p < period_; ++p) {
    if (period_ % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < period_ && ok; ++i) ok = pattern_[i] == pattern_[i % p];
    if (ok) {
      pattern_.resize(p);
      period_ = p;
      break;
    }
  }
  while (threshold_ > 0 && prefix_[threshold_ - 1] == pattern_[(threshold_ - 1) % period_]) {
    --threshold_;
    prefix_.pop_back();
  }
}

SetDescriptor SetDescriptor::all() {
  SetDescriptor s;
  s.pattern_[0] = true;
  return s;
}

SetDescriptor SetDescriptor::finite(const std::vector<std::size_t>& elements) {
  std::size_t t = 0;
  for (auto e : elements) t = std::max(t, e + 1);
  std::vector<bool> bits(t, false);
  for (auto e : elements) bits[e] = true;
  return build(t, 1, [&](std::size_t n) { return n < t && bits[n]; });
}

SetDescriptor SetDescriptor::progression(std::size_t step, std::size_t offset) {
  if (step == 0) return finite({offset});
  return build(offset, step, [&](std::size_t n) { return n >= offset && (n - offset) % step == 0; });
}

SetDescriptor SetDescriptor::range(std::size_t lo, std::size_t hi) {
  return build(std::max(lo, hi), 1, [&](std::size_t n) { return n >= lo && n < hi; });
}

SetDescriptor SetDescriptor::from_parts(
    const std::vector<std::pair<std::size_t, std::size_t>>& progressions,
    const std::vector<std::size_t>& include, const std::vector<std::size_t>& exclude) {
  SetDescriptor s = finite(include);
  for (const auto& [a, b] : progressions) {
    if (a == 0) throw SchemaError("progression step must be at least 1");
    s = s.unite(progression(a, b));
  }
  return s.minus(finite(exclude));
}

bool SetDescriptor::contains(std::size_t n) const {
  return n < threshold_ ? static_cast<bool>(prefix_[n]) : tail_member(n);
}

bool SetDescriptor::is_empty() const {
  return is_finite() && std::none_of(prefix_.begin(), prefix_.end(), [](bool b) { return b; });
}

bool SetDescriptor::is_finite() const {
  return std::none_of(pattern_.begin(), pattern_.end(), [](bool b) { return b; });
}

Rational SetDescriptor::density() const {
  auto hits = std::count(pattern_.begin(), pattern_.end(), true);
  Rational d(static_cast<long>(hits), static_cast<long>(period_));
  d.canonicalize();
  return d;
}

std::optional<std::size_t> SetDescriptor::min_element() const {
  for (std::size_t n = 0; n < threshold_; ++n)
    if (prefix_[n]) return n;
  for (std::size_t i = 0; i < period_; ++i)
    if (tail_member(threshold_ + i)) return threshold_ + i;
  return std::nullopt;
}

std::optional<std::size_t> SetDescriptor::max_element() const {
  if (!is_finite()) return std::nullopt;
  for (std::size_t n = threshold_; n-- > 0;)
    if (prefix_[n]) return n;
  return std::nullopt;
}

std::vector<std::size_t> SetDescriptor::elements_below(std::size_t n) const {
  std::vector<std::size_t> out;
  std::size_t upto = std::min(n, threshold_);
  for (std::size_t k = 0; k < upto; ++k)
    if (prefix_[k]) out.push_back(k);
  for (std::size_t k = upto; k < n; ++k)
    if (tail_member(k)) out.push_back(k);
  return out;
}

std::size_t SetDescriptor::count_below(std::size_t n) const {
  std::size_t c = 0;
  std::size_t upto = std::min(n, threshold_);
  for (std::size_t k = 0; k < upto; ++k) c += prefix_[k];
  if (n > threshold_) {
    std::size_t len = n - threshold_;
    std::size_t per = std::count(pattern_.begin(), pattern_.end(), true);
    c += (len / period_) * per;
    for (std::size_t k = threshold_ + (len / period_) * period_; k < n; ++k) c += tail_member(k);
  }
  return c;
}

SetDescriptor SetDescriptor::complement() const {
  return build(threshold_, period_, [&](std::size_t n) { return !contains(n); });
}

SetDescriptor SetDescriptor::unite(const SetDescriptor& o) const {
  return build(std::max(threshold_, o.threshold_), checked_lcm(period_, o.period_),
               [&](std::size_t n) { return contains(n) || o.contains(n); });
}

SetDescriptor SetDescriptor::intersect(const SetDescriptor& o) const {
  return build(std::max(threshold_, o.threshold_), checked_lcm(period_, o.period_),
               [&](std::size_t n) { return contains(n) && o.contains(n); });
}

SetDescriptor SetDescriptor::minus(const SetDescriptor& o) const {
  return build(std::max(threshold_, o.threshold_), checked_lcm(period_, o.period_),
               [&](std::size_t n) { return contains(n) && !o.contains(n); });
}

SetDescriptor SetDescriptor::without_prefix(std::size_t t) const {
  return build(std::max(threshold_, t), period_,
               [&](std::size_t n) { return n >= t && contains(n); });
}

bool SetDescriptor::subset_of(const SetDescriptor& o) const { return minus(o).is_empty(); }

std::vector<std::pair<std::size_t, std::size_t>> SetDescriptor::progressions() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (std::all_of(pattern_.begin(), pattern_.end(), [](bool b) { return b; })) {
    out.emplace_back(1, threshold_);
    return out;
  }
  for (std::size_t i = 0; i < period_; ++i) {
    std::size_t n = threshold_ + i;
    if (tail_member(n)) out.emplace_back(period_, n);
  }
  std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.second < b.second; });
  return out;
}

std::vector<std::size_t> SetDescriptor::included() const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < threshold_; ++n)
    if (prefix_[n]) out.push_back(n);
  return out;
}

std::string SetDescriptor::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto n : included()) {
    os << (first ? "" : ", ") << n;
    first = false;
  }
  for (auto [a, b] : progressions()) {
    os << (first ? "" : ", ");
    if (a == 1)
      os << b << "..";
    else
      os << a << "w+" << b;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace summa
