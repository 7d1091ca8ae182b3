#include "summa/ideal.hpp"

#include <algorithm>
#include <cmath>

#include "summa/errors.hpp"

namespace summa {

// ---- IdealSpec ------------------------------------------------------------

namespace {

constexpr std::size_t kDyadicSetLimit = 20;  // 2^20 = SetDescriptor::kMaxPeriod

std::size_t two_adic_valuation(std::size_t p) {
  std::size_t v = 0;
  while (p % 2 == 0) {
    p /= 2;
    ++v;
  }
  return v;
}

}  // namespace

IdealSpec IdealSpec::fin(std::string label) {
  IdealSpec s;
  s.kind_ = Kind::Fin;
  s.label_ = std::move(label);
  s.generator_ = "tails";
  return s;
}

IdealSpec IdealSpec::density_zero(std::string label) {
  IdealSpec s;
  s.kind_ = Kind::DensityZero;
  s.label_ = std::move(label);
  return s;
}

IdealSpec IdealSpec::dyadic(std::string label) {
  IdealSpec s;
  s.kind_ = Kind::CountablyGenerated;
  s.label_ = std::move(label);
  s.generator_ = "dyadic";
  return s;
}

IdealSpec IdealSpec::from_dual_sets(std::string label, std::vector<SetDescriptor> sets) {
  if (sets.empty()) throw SchemaError("ideal '" + label + "': dual base list is empty");
  IdealSpec s;
  s.kind_ = Kind::CountablyGenerated;
  s.label_ = std::move(label);
  SetDescriptor running = SetDescriptor::all();
  for (std::size_t t = 0; t < sets.size(); ++t) {
    running = running.intersect(sets[t]);
    s.sets_.push_back(running.without_prefix(t));
  }
  if (s.sets_.back().is_finite())
    throw SchemaError("ideal '" + s.label_ + "': the last dual set is finite, so omega would belong to the ideal");
  return s;
}

IdealSpec IdealSpec::generated_by(std::string label, const SetDescriptor& g) {
  return from_dual_sets(std::move(label), {g.complement()});
}

void IdealSpec::require_dual_base(const char* what) const {
  if (!has_dual_base())
    throw PreconditionError(std::string(what) + ": ideal '" + label_ + "' is not countably generated");
}

SetDescriptor IdealSpec::dual_set(std::size_t t) const {
  require_dual_base("dual_set");
  if (generator_ == "tails") return SetDescriptor::tail(t);
  if (generator_ == "dyadic") {
    if (t > kDyadicSetLimit) throw PreconditionError("dyadic dual set index beyond the period cap");
    std::size_t step = std::size_t{1} << t;
    return SetDescriptor::progression(step, step - 1);
  }
  if (t < sets_.size()) return sets_[t];
  return sets_.back().without_prefix(t);
}

std::vector<std::size_t> IdealSpec::window(std::size_t t, std::size_t N) const {
  require_dual_base("window");
  std::vector<std::size_t> out;
  if (generator_ == "tails") {
    for (std::size_t n = t; n < N; ++n) out.push_back(n);
  } else if (generator_ == "dyadic") {
    if (t >= 62) return out;
    std::size_t step = std::size_t{1} << t;
    for (std::size_t n = step - 1; n < N; n += step) out.push_back(n);
  } else {
    const SetDescriptor& base = sets_[std::min(t, sets_.size() - 1)];
    for (auto n : base.elements_below(N))
      if (n >= t) out.push_back(n);
  }
  return out;
}

std::size_t IdealSpec::stability_index(const SetDescriptor& e) const {
  require_dual_base("stability_index");
  if (generator_ == "tails") return 0;
  if (generator_ == "dyadic") return two_adic_valuation(e.period());
  return sets_.size() - 1;
}

Membership IdealSpec::contains(const SetDescriptor& e, std::size_t tmax) const {
  if (kind_ == Kind::DensityZero) {
    // eventually periodic sets have density zero exactly when they are finite
    return e.is_finite() ? Membership::Yes : Membership::No;
  }
  std::size_t t = stability_index(e);
  if (t > tmax) return Membership::Unknown;
  return e.intersect(dual_set(t)).is_finite() ? Membership::Yes : Membership::No;
}

bool IdealSpec::split(std::size_t n) const {
  if (kind_ == Kind::DensityZero || generator_ == "tails") return n % 2 == 0;
  if (generator_ == "dyadic") return unpair_index(n).second % 2 == 0;
  const SetDescriptor& g = sets_.back();
  if (!g.contains(n)) return true;
  return g.count_below(n) % 2 == 0;
}

Membership ideal_contains(const IdealSpec& ideal, const SetDescriptor& e, const HorizonParams& h) {
  return ideal.contains(e, h.depth_limit());
}

std::size_t effective_depth(const IdealSpec& ideal, const HorizonParams& h) {
  std::size_t floor = h.window_floor();
  if (ideal.window(0, h.N).size() < floor)
    throw HorizonTooSmall("horizon N=" + std::to_string(h.N) + " leaves fewer than " + std::to_string(floor) +
                          " indices in the first dual set of '" + ideal.label() + "'");
  std::size_t lo = 0, hi = h.depth_limit();
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo + 1) / 2;
    if (ideal.window(mid, h.N).size() >= floor)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// ---- sampling and decisions ----------------------------------------------

SampledSequence sample(const VectorSequence& x, std::size_t N) {
  SampledSequence s;
  s.dim = x.dim();
  s.values.reserve(N);
  for (std::size_t n = 0; n < N; ++n) s.values.push_back(x.term(n));
  return s;
}

namespace {

bool ranks_above(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() > b.exact();
  return a.approx() > b.approx();
}

bool ranks_below(const Scalar& a, const Scalar& b) { return ranks_above(b, a); }

std::vector<std::size_t> density_window(std::size_t N) {
  std::vector<std::size_t> w;
  for (std::size_t n = N / 2; n < N; ++n) w.push_back(n);
  return w;
}

bool all_le(const std::vector<Scalar>& v, const std::vector<std::size_t>& w, const Scalar& eps) {
  for (auto n : w)
    if (!certainly_le(v[n], eps)) return false;
  return true;
}

std::size_t argmax_on(const std::vector<Scalar>& v, const std::vector<std::size_t>& w) {
  std::size_t best = w.front();
  for (auto n : w)
    if (ranks_above(v[n], v[best])) best = n;
  return best;
}

bool all_exact_zero(const std::vector<Scalar>& v, const std::vector<std::size_t>& w) {
  for (auto n : w)
    if (!v[n].is_exact() || !v[n].is_zero()) return false;
  return true;
}

NullLimitDecision decide_density(const std::vector<Scalar>& upper, const std::vector<Scalar>& lower,
                                 const HorizonParams& h) {
  NullLimitDecision d;
  auto w = density_window(upper.size());
  if (w.size() < h.window_floor()) return d;
  std::vector<std::size_t> good;
  std::size_t bad = 0;
  for (auto n : w) {
    if (certainly_le(upper[n], h.eps))
      good.push_back(n);
    else
      ++bad;
  }
  Scalar two_eps = h.eps * Scalar(2);
  if (certainly_le(Scalar::ratio(static_cast<long>(bad), static_cast<long>(w.size())), h.eps)) {
    d.verdict = Verdict::Holds;
    d.t = 0;
    if (!good.empty()) {
      d.n = argmax_on(upper, good);
      d.value = upper[d.n];
    }
    d.exact_zero = bad == 0 && all_exact_zero(upper, w);
    return d;
  }
  std::vector<std::size_t> far;
  for (auto n : w)
    if (certainly_lt(two_eps, lower[n])) far.push_back(n);
  if (4 * far.size() >= w.size()) {
    d.verdict = Verdict::FailsWithWitness;
    d.n = far.front();
    d.value = lower[d.n];
    return d;
  }
  d.n = argmax_on(upper, w);
  d.value = upper[d.n];
  return d;
}

}  // namespace

NullLimitDecision decide_null_limit(const std::vector<Scalar>& upper, const std::vector<Scalar>& lower,
                                    const IdealSpec& ideal, const HorizonParams& h) {
  if (upper.size() != lower.size()) throw DimensionMismatch("deviation bounds differ in length");
  if (!ideal.has_dual_base()) return decide_density(upper, lower, h);
  NullLimitDecision d;
  std::size_t t_eff;
  try {
    HorizonParams hh = h;
    hh.N = upper.size();
    t_eff = effective_depth(ideal, hh);
  } catch (const HorizonTooSmall&) {
    return d;
  }
  const std::size_t N = upper.size();
  auto deepest = ideal.window(t_eff, N);
  if (all_le(upper, deepest, h.eps)) {
    std::size_t lo = 0, hi = t_eff;
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (all_le(upper, ideal.window(mid, N), h.eps))
        hi = mid;
      else
        lo = mid + 1;
    }
    auto w = ideal.window(lo, N);
    d.verdict = Verdict::Holds;
    d.t = lo;
    d.n = argmax_on(upper, w);
    d.value = upper[d.n];
    d.exact_zero = all_exact_zero(upper, w);
    return d;
  }
  std::size_t n = argmax_on(lower, deepest);
  if (certainly_lt(h.eps * Scalar(2), lower[n])) {
    d.verdict = Verdict::FailsWithWitness;
    d.n = n;
    d.value = lower[n];
    return d;
  }
  d.n = argmax_on(upper, deepest);
  d.value = upper[d.n];
  return d;
}

// ---- limits ---------------------------------------------------------------

namespace {

struct Level {
  Vector value;
  SetDescriptor indices;
};

// Level sets of a decidable sequence, in order of first appearance in the block.
std::vector<Level> level_sets(const VectorSequence& x) {
  auto block = x.block();
  std::size_t start = x.tail_start(), p = block.size();
  std::vector<Level> levels;
  for (std::size_t q = 0; q < p; ++q) {
    auto it = std::find_if(levels.begin(), levels.end(), [&](const Level& l) { return l.value == block[q]; });
    if (it != levels.end()) continue;
    std::vector<std::pair<std::size_t, std::size_t>> progs;
    for (std::size_t r = q; r < p; ++r)
      if (block[r] == block[q]) progs.emplace_back(p, start + r);
    std::vector<std::size_t> include;
    for (std::size_t n = 0; n < start; ++n)
      if (x.prefix()[n] == block[q]) include.push_back(n);
    levels.push_back(Level{block[q], SetDescriptor::from_parts(progs, include, {})});
  }
  return levels;
}

std::optional<std::size_t> first_clear_depth(const IdealSpec& ideal, const SetDescriptor& exc) {
  if (!ideal.has_dual_base()) return std::nullopt;
  if (exc.is_empty()) return 0;
  std::size_t ts = ideal.stability_index(exc);
  if (ideal.generator() == "dyadic" && ts > kDyadicSetLimit) return std::nullopt;
  SetDescriptor rest = exc.intersect(ideal.dual_set(ts));
  std::size_t hi = ts + (rest.max_element() ? *rest.max_element() + 1 : 0);
  if (ideal.generator() == "dyadic") hi = std::min(hi, kDyadicSetLimit);
  auto clear = [&](std::size_t t) { return exc.intersect(ideal.dual_set(t)).is_empty(); };
  if (!clear(hi)) return std::nullopt;
  std::size_t lo = 0;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (clear(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

IdealLimit exact_limit(const VectorSequence& x, const IdealSpec& ideal, const HorizonParams& h) {
  auto levels = level_sets(x);
  IdealLimit out;
  out.exact = true;
  bool undecided = false;
  for (const auto& level : levels) {
    SetDescriptor exc = level.indices.complement();
    Membership m = ideal.contains(exc, h.depth_limit());
    if (m == Membership::Yes) {
      out.eta = level.value;
      out.t = first_clear_depth(ideal, exc);
      out.radius = Scalar(0);
      return out;
    }
    if (m == Membership::Unknown) undecided = true;
  }
  if (undecided)
    throw HorizonTooSmall("dual-base depth tmax=" + std::to_string(h.depth_limit()) + " cannot decide the limit of '" +
                          x.label() + "'");
  std::vector<Vector> clusters;
  for (const auto& level : levels)
    if (ideal.contains(level.indices, h.depth_limit()) != Membership::Yes) clusters.push_back(level.value);
  if (clusters.size() >= 2) out.separating = std::pair(clusters[0], clusters[1]);
  return out;
}

std::vector<std::size_t> limit_window(const SampledSequence& x, const IdealSpec& ideal, const HorizonParams& h) {
  HorizonParams hh = h;
  hh.N = x.size();
  return ideal.has_dual_base() ? ideal.window(effective_depth(ideal, hh), x.size()) : density_window(x.size());
}

Scalar pick_center(Scalar lo, Scalar hi, const Scalar& slack) {
  Scalar mid = (lo + hi) / Scalar(2);
  if (!mid.is_exact()) return mid;
  // simplest value keeping every point within slack, else near the midpoint
  if (certainly_le(hi - slack, lo + slack)) return recognize(hi - slack, lo + slack);
  return recognize(mid - slack / Scalar(4), mid + slack / Scalar(4));
}

Scalar median_of(std::vector<Scalar> v) {
  std::sort(v.begin(), v.end(), ranks_below);
  return v[v.size() / 2];
}

}  // namespace

IdealLimit ideal_lim(const SampledSequence& x, const IdealSpec& ideal, const HorizonParams& h) {
  if (x.size() == 0) throw HorizonTooSmall("empty sample");
  auto w = limit_window(x, ideal, h);
  if (w.empty()) throw HorizonTooSmall("empty limit window");
  const std::size_t d = x.dim;
  Scalar slack = h.eps / Scalar(static_cast<long>(d));
  Vector eta(d), top(d), bottom(d);
  std::vector<std::size_t> top_at(d), bottom_at(d);
  for (std::size_t j = 0; j < d; ++j) {
    Scalar hi, lo;
    std::vector<Scalar> column;
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::size_t n = w[i];
      Scalar e = x.error(n);
      Scalar up = x.values[n][j] + e, down = x.values[n][j] - e;
      hi = i == 0 ? up : max(hi, up);
      lo = i == 0 ? down : min(lo, down);
      column.push_back(x.values[n][j]);
      // certain spread uses the pessimistic side of each error bar
      if (i == 0 || ranks_above(down, top[j])) {
        top[j] = down;
        top_at[j] = n;
      }
      if (i == 0 || ranks_above(bottom[j], up)) {
        bottom[j] = up;
        bottom_at[j] = n;
      }
    }
    if (ideal.has_dual_base()) {
      eta[j] = pick_center(lo, hi, slack);
    } else {
      Scalar med = median_of(column);
      eta[j] = med.is_exact() ? recognize(med - slack / Scalar(4), med + slack / Scalar(4)) : med;
    }
  }
  std::vector<Scalar> upper(x.size()), lower(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    Scalar dev = norm1(subtract(x.values[n], eta));
    Scalar e = x.error(n);
    upper[n] = dev + e;
    lower[n] = max(Scalar(0), dev - e);
  }
  NullLimitDecision dec = decide_null_limit(upper, lower, ideal, h);
  IdealLimit out;
  if (dec.verdict == Verdict::Holds) {
    out.eta = eta;
    out.t = ideal.has_dual_base() ? dec.t : std::nullopt;
    out.radius = dec.value;
    return out;
  }
  Scalar four_eps = h.eps * Scalar(4);
  for (std::size_t j = 0; j < d; ++j) {
    if (certainly_lt(four_eps, top[j] - bottom[j])) {
      out.separating = std::pair(x.values[top_at[j]], x.values[bottom_at[j]]);
      return out;
    }
  }
  if (!ideal.has_dual_base() && dec.verdict == Verdict::FailsWithWitness) {
    out.separating = std::pair(x.values[dec.n], eta);
    return out;
  }
  throw HorizonTooSmall("horizon N=" + std::to_string(x.size()) + " decides neither convergence nor divergence");
}

IdealLimit ideal_lim(const VectorSequence& x, const IdealSpec& ideal, const HorizonParams& h) {
  if (x.decidable()) return exact_limit(x, ideal, h);
  if (!x.bound()) throw PreconditionError("sequence '" + x.label() + "' has no certified bound");
  return ideal_lim(sample(x, h.N), ideal, h);
}

// ---- cluster points -------------------------------------------------------

namespace {

struct Hit {
  Scalar lo, hi;
};

struct Leaf {
  Scalar lo, hi;  // clipped to the hits inside the cell
  std::size_t hits;
};

bool meets(const Hit& hit, const Scalar& lo, const Scalar& hi) {
  return !(certainly_lt(hit.hi, lo) || certainly_lt(hi, hit.lo));
}

void bisect(const std::vector<Hit>& hits, std::vector<std::size_t> inside, const Scalar& lo, const Scalar& hi,
            const Scalar& eps, std::vector<Leaf>& out) {
  if (inside.empty()) return;
  if (certainly_le(hi - lo, eps)) {
    Scalar a = hits[inside[0]].lo, b = hits[inside[0]].hi;
    for (auto i : inside) {
      a = min(a, hits[i].lo);
      b = max(b, hits[i].hi);
    }
    out.push_back(Leaf{max(a, lo), min(b, hi), inside.size()});
    return;
  }
  Scalar mid = (lo + hi) / Scalar(2);
  std::vector<std::size_t> left, right;
  for (auto i : inside) {
    if (meets(hits[i], lo, mid)) left.push_back(i);
    if (meets(hits[i], mid, hi)) right.push_back(i);
  }
  bisect(hits, std::move(left), lo, mid, eps, out);
  bisect(hits, std::move(right), mid, hi, eps, out);
}

ClusterCover cover_from_leaves(std::vector<Leaf> leaves, std::size_t threshold) {
  ClusterCover c;
  std::vector<Leaf> kept;
  for (auto& l : leaves)
    if (l.hits >= threshold) kept.push_back(l);
  if (kept.empty() && !leaves.empty()) {
    auto best = std::max_element(leaves.begin(), leaves.end(),
                                 [](const Leaf& a, const Leaf& b) { return a.hits < b.hits; });
    kept.push_back(*best);
  }
  for (auto& l : kept) c.intervals.emplace_back(l.lo, l.hi);
  return c;
}

ClusterCover exact_cover(const VectorSequence& x, const IdealSpec& ideal, const HorizonParams& h) {
  ClusterCover c;
  c.exact = true;
  std::vector<Scalar> values;
  for (const auto& level : level_sets(x)) {
    Membership m = ideal.contains(level.indices, h.depth_limit());
    if (m == Membership::Yes) continue;
    if (m == Membership::Unknown) c.exact = false;
    values.push_back(level.value[0]);
  }
  std::sort(values.begin(), values.end(), ranks_below);
  for (auto& v : values) c.intervals.emplace_back(v, v);
  return c;
}

}  // namespace

ClusterCover cluster_points(const SampledSequence& x, const IdealSpec& ideal, const HorizonParams& h, Exec exec) {
  if (x.dim != 1) throw PreconditionError("cluster points need a scalar sequence");
  if (x.size() == 0) throw HorizonTooSmall("empty sample");
  auto w = limit_window(x, ideal, h);
  if (w.empty()) throw HorizonTooSmall("empty cluster window");
  std::vector<Hit> hits;
  Scalar reach(1);
  for (auto n : w) {
    Scalar e = x.error(n);
    Hit hit{x.values[n][0] - e, x.values[n][0] + e};
    while (!certainly_le(abs(hit.lo), reach) || !certainly_le(abs(hit.hi), reach)) reach *= Scalar(2);
    hits.push_back(hit);
  }
  constexpr std::size_t kCells = 64;
  Scalar width = reach * Scalar(2) / Scalar(static_cast<long>(kCells));
  std::vector<std::vector<Leaf>> per_cell(kCells);
  for_each_index(kCells, exec, [&](std::size_t c) {
    Scalar lo = -reach + width * Scalar(static_cast<long>(c));
    Scalar hi = lo + width;
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < hits.size(); ++i)
      if (meets(hits[i], lo, hi)) inside.push_back(i);
    bisect(hits, std::move(inside), lo, hi, h.eps, per_cell[c]);
  });
  std::vector<Leaf> leaves;
  for (auto& cell : per_cell)
    for (auto& l : cell) leaves.push_back(std::move(l));
  std::size_t threshold = 1;
  if (!ideal.has_dual_base()) {
    Scalar need = h.eps * Scalar(static_cast<long>(w.size()));
    threshold = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(need.approx())));
  }
  return cover_from_leaves(std::move(leaves), threshold);
}

ClusterCover cluster_points(const VectorSequence& x, const IdealSpec& ideal, const HorizonParams& h) {
  if (x.dim() != 1) throw PreconditionError("cluster points need a scalar sequence");
  if (x.decidable()) return exact_cover(x, ideal, h);
  if (!x.bound()) throw PreconditionError("sequence '" + x.label() + "' has no certified bound");
  return cluster_points(sample(x, h.N), ideal, h);
}

namespace {

Scalar snap(const Scalar& v, const Scalar& eps) {
  return v.is_exact() ? recognize(v - eps, v + eps) : v;
}

Scalar cover_max(const ClusterCover& c) {
  Scalar m = c.intervals.front().second;
  for (const auto& iv : c.intervals) m = max(m, iv.second);
  return m;
}

Scalar cover_min(const ClusterCover& c) {
  Scalar m = c.intervals.front().first;
  for (const auto& iv : c.intervals) m = min(m, iv.first);
  return m;
}

}  // namespace

Scalar ideal_limsup(const VectorSequence& x, const IdealSpec& ideal, const HorizonParams& h) {
  ClusterCover c = cluster_points(x, ideal, h);
  return c.exact ? cover_max(c) : snap(cover_max(c), h.eps);
}

Scalar ideal_liminf(const VectorSequence& x, const IdealSpec& ideal, const HorizonParams& h) {
  ClusterCover c = cluster_points(x, ideal, h);
  return c.exact ? cover_min(c) : snap(cover_min(c), h.eps);
}

Scalar ideal_limsup(const SampledSequence& x, const IdealSpec& ideal, const HorizonParams& h) {
  return snap(cover_max(cluster_points(x, ideal, h)), h.eps);
}

Scalar ideal_liminf(const SampledSequence& x, const IdealSpec& ideal, const HorizonParams& h) {
  return snap(cover_min(cluster_points(x, ideal, h)), h.eps);
}

std::pair<Scalar, Scalar> core(const VectorSequence& x, const IdealSpec& ideal, const HorizonParams& h) {
  return {ideal_liminf(x, ideal, h), ideal_limsup(x, ideal, h)};
}

}  // namespace summa
