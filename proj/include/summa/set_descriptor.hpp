#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "summa/scalar.hpp"

namespace summa {

/// An eventually periodic subset of omega, kept in canonical form: explicit
/// membership below a threshold T, then a residue pattern modulo a period P.
/// Finite unions of progressions a*omega+b and finite sets, with finite
/// exceptions removed, are exactly the sets of this shape.
class SetDescriptor {
 public:
  static constexpr std::size_t kMaxPeriod = std::size_t{1} << 20;

  SetDescriptor();  // empty set
  static SetDescriptor empty() { return SetDescriptor(); }
  static SetDescriptor all();
  static SetDescriptor finite(const std::vector<std::size_t>& elements);
  static SetDescriptor progression(std::size_t step, std::size_t offset);
  static SetDescriptor range(std::size_t lo, std::size_t hi);  // [lo, hi)
  static SetDescriptor tail(std::size_t from) { return progression(1, from); }
  // (union of progressions and include) minus exclude
  static SetDescriptor from_parts(const std::vector<std::pair<std::size_t, std::size_t>>& progressions,
                                  const std::vector<std::size_t>& include,
                                  const std::vector<std::size_t>& exclude);

  bool contains(std::size_t n) const;
  bool is_empty() const;
  bool is_finite() const;
  Rational density() const;
  std::optional<std::size_t> min_element() const;
  std::optional<std::size_t> max_element() const;  // only for finite sets
  // elements below n, ascending
  std::vector<std::size_t> elements_below(std::size_t n) const;
  std::size_t count_below(std::size_t n) const;

  SetDescriptor complement() const;
  SetDescriptor unite(const SetDescriptor& o) const;
  SetDescriptor intersect(const SetDescriptor& o) const;
  SetDescriptor minus(const SetDescriptor& o) const;
  SetDescriptor without_prefix(std::size_t t) const;  // E minus [0, t)
  bool subset_of(const SetDescriptor& o) const;
  bool disjoint_from(const SetDescriptor& o) const { return intersect(o).is_empty(); }

  std::size_t threshold() const { return threshold_; }
  std::size_t period() const { return period_; }

  // Canonical progression/include decomposition (exclude is always empty).
  std::vector<std::pair<std::size_t, std::size_t>> progressions() const;
  std::vector<std::size_t> included() const;
  std::string str() const;

  friend bool operator==(const SetDescriptor&, const SetDescriptor&) = default;

 private:
  template <class Pred>
  static SetDescriptor build(std::size_t threshold, std::size_t period, Pred member);
  void normalize();
  bool tail_member(std::size_t n) const { return pattern_[n % period_]; }

  std::size_t threshold_ = 0;
  std::vector<bool> prefix_;  // size threshold_
  std::size_t period_ = 1;
  std::vector<bool> pattern_;  // size period_, indexed by n mod period_
};

}  // namespace summa
