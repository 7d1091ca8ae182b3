#include "summa/regularity.hpp"

#include <algorithm>

#include "summa/errors.hpp"
#include "summa/kernels.hpp"
#include "summa/transform.hpp"

namespace summa {

bool all_hold(const std::vector<ConditionReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const ConditionReport& r) { return r.verdict == Verdict::Holds; });
}

const ConditionReport& find_condition(const std::vector<ConditionReport>& reports, const std::string& label) {
  for (const auto& r : reports)
    if (r.condition == label) return r;
  throw UnknownLabel("no condition '" + label + "' in report");
}

std::vector<SetDescriptor> test_battery(const IdealSpec& ideal, const HorizonParams& h,
                                        const std::vector<SetDescriptor>& user) {
  std::vector<SetDescriptor> out;
  auto add = [&out](const SetDescriptor& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  add(SetDescriptor::finite({0}));
  add(SetDescriptor::finite({1}));
  if (ideal.kind() != IdealSpec::Kind::Fin) {
    std::size_t found = 0;
    for (std::size_t a = 2; a <= 4 && found < 2; ++a)
      for (std::size_t b = 0; b < a && found < 2; ++b) {
        SetDescriptor p = SetDescriptor::progression(a, b);
        if (ideal_contains(ideal, p, h) == Membership::Yes) {
          add(p);
          ++found;
        }
      }
  }
  for (const auto& s : user) {
    Membership m = ideal_contains(ideal, s, h);
    if (m != Membership::Yes)
      throw PreconditionError("test set " + s.str() + " is not certified to lie in ideal '" + ideal.label() +
                              "' (membership " + to_string(m) + ")");
    add(s);
  }
  return out;
}

namespace {

using Profiles = std::vector<std::vector<RowProfile>>;  // [nu][n]

using Deviation = DeviationSeries;

struct Sample {
  Scalar value;
  Scalar error;
};

bool above(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() > b.exact();
  return a.approx() > b.approx();
}

// Worst member and coefficient per row; f(nu, n, i, j) gives the quantity and its error.
template <class F>
Deviation worst_case(std::size_t kappa, std::size_t N, std::size_t m, std::size_t d, F f) {
  Deviation dev;
  dev.upper.resize(N);
  dev.lower.resize(N);
  dev.nu.resize(N);
  dev.ij.resize(N);
  for (std::size_t n = 0; n < N; ++n) {
    bool first = true;
    for (std::size_t nu = 0; nu < kappa; ++nu)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          Sample s = f(nu, n, i, j);
          Scalar up = s.value + s.error;
          Scalar lo = max(Scalar(0), s.value - s.error);
          if (first) {
            dev.upper[n] = up;
            dev.lower[n] = lo;
            dev.nu[n] = nu;
            dev.ij[n] = {i, j};
            first = false;
            continue;
          }
          dev.upper[n] = max(dev.upper[n], up);
          if (above(lo, dev.lower[n])) {
            dev.lower[n] = lo;
            dev.nu[n] = nu;
            dev.ij[n] = {i, j};
          }
        }
  }
  return dev;
}

std::string horizon_scope(const IdealSpec& J, const HorizonParams& h) {
  return "limit along '" + J.label() + "' at N=" + std::to_string(h.N) + ", eps=" + h.eps.str();
}

std::string sets_scope(const std::vector<SetDescriptor>& sets) {
  std::string s = "test sets ";
  for (std::size_t i = 0; i < sets.size(); ++i) s += (i ? ", " : "") + sets[i].str();
  return s;
}

}  // namespace

ConditionReport null_limit_report(const std::string& label, const DeviationSeries& dev, const IdealSpec& J,
                             const HorizonParams& h, const std::string& quantity,
                             const std::optional<SetDescriptor>& set, bool coefficientwise) {
  ConditionReport r;
  r.condition = label;
  r.scope = horizon_scope(J, h);
  NullLimitDecision dec = decide_null_limit(dev.upper, dev.lower, J, h);
  r.verdict = dec.verdict;
  r.margin = dec.value;
  r.tolerance = dec.exact_zero ? Scalar(0) : h.eps;
  if (dec.verdict == Verdict::Holds) {
    r.depth = dec.t;
  } else if (dec.verdict == Verdict::FailsWithWitness) {
    Witness w;
    w.quantity = quantity;
    w.n = dec.n;
    w.nu = dev.nu[dec.n];
    w.set = set;
    if (coefficientwise) w.ij = dev.ij[dec.n];
    w.value = dec.value;
    r.witness = w;
  }
  return r;
}

// Combines per-set reports: first failure wins, all Holds gives Holds.
ConditionReport combine_set_reports(const std::string& label, const std::vector<ConditionReport>& parts,
                             const std::vector<SetDescriptor>& sets) {
  ConditionReport r;
  r.condition = label;
  r.scope = parts.empty() ? "no test sets" : parts.front().scope + "; " + sets_scope(sets);
  r.verdict = Verdict::Holds;
  r.margin = Scalar(0);
  r.tolerance = Scalar(0);
  const ConditionReport* unknown = nullptr;
  for (const auto& p : parts) {
    if (p.verdict == Verdict::FailsWithWitness) {
      r.verdict = p.verdict;
      r.witness = p.witness;
      r.margin = p.margin;
      r.tolerance = p.tolerance;
      r.depth.reset();
      return r;
    }
    if (p.verdict == Verdict::UnknownAtHorizon && !unknown) unknown = &p;
    if (p.verdict == Verdict::Holds) {
      r.margin = max(r.margin, p.margin);
      r.tolerance = max(r.tolerance, p.tolerance);
      r.depth = r.depth ? std::max(*r.depth, p.depth.value_or(0)) : p.depth;
    }
  }
  if (unknown) {
    r.verdict = Verdict::UnknownAtHorizon;
    r.margin = unknown->margin;
    r.tolerance = unknown->tolerance;
    r.depth.reset();
  }
  return r;
}

namespace {

Profiles compute_profiles(const MatrixFamily& family, const HorizonParams& h, const std::vector<SetDescriptor>& sets,
                          Exec exec) {
  Profiles p;
  for (const auto& a : family.members()) p.push_back(kernels::row_profiles(a, h.N, sets, h.truncation_tol(), exec));
  return p;
}

Scalar total_abs_upper(const RowProfile& p, std::size_t d) {
  return p.total_abs + p.error * Scalar(static_cast<long>(d));
}

// Row norms that grow by half again between the two halves of the horizon
// are reported as unbounded.
struct Growth {
  bool grows = false;
  std::size_t n = 0;
  Scalar value;
};

Growth growth_test(const std::vector<std::size_t>& idx, const std::vector<Scalar>& lower,
                   const std::vector<Scalar>& upper) {
  Growth g;
  if (idx.size() < 2) return g;
  std::size_t half = idx.size() / 2;
  Scalar early = upper[idx[0]];
  for (std::size_t i = 0; i < half; ++i) early = max(early, upper[idx[i]]);
  std::size_t best = idx[half];
  for (std::size_t i = half; i < idx.size(); ++i)
    if (above(lower[idx[i]], lower[best])) best = idx[i];
  Scalar late = lower[best];
  if (certainly_lt(Scalar(0), late) && certainly_le(early * Scalar::ratio(3, 2), late)) {
    g.grows = true;
    g.n = best;
    g.value = late;
  }
  return g;
}

ConditionReport bounded_members_report(const std::string& label, const MatrixFamily& family, const Profiles& prof,
                                       const HorizonParams& h) {
  ConditionReport r;
  r.condition = label;
  r.scope = "each member separately, N=" + std::to_string(h.N);
  r.verdict = Verdict::Holds;
  r.margin = Scalar(0);
  r.tolerance = Scalar(0);
  std::vector<std::size_t> idx(h.N);
  for (std::size_t n = 0; n < h.N; ++n) idx[n] = n;
  bool unknown = false;
  for (std::size_t nu = 0; nu < family.size(); ++nu) {
    const auto& a = family[nu];
    if (a.norm_bound()) {
      r.margin = max(r.margin, *a.norm_bound());
      continue;
    }
    std::vector<Scalar> lower(h.N), upper(h.N);
    for (std::size_t n = 0; n < h.N; ++n) {
      lower[n] = prof[nu][n].total_abs;
      upper[n] = total_abs_upper(prof[nu][n], a.d());
    }
    Growth g = growth_test(idx, lower, upper);
    if (g.grows) {
      r.verdict = Verdict::FailsWithWitness;
      r.witness = Witness{"row-norm", g.n, nu, std::nullopt, std::nullopt, g.value};
      r.margin = g.value;
      return r;
    }
    unknown = true;
  }
  if (unknown) r.verdict = Verdict::UnknownAtHorizon;
  return r;
}

ConditionReport bounded_along_filter_report(const std::string& label, const MatrixFamily& family,
                                            const Profiles& prof, const IdealSpec& J, const HorizonParams& h) {
  ConditionReport r;
  r.condition = label;
  r.scope = "worst member along the first dual set of '" + J.label() + "', N=" + std::to_string(h.N);
  r.tolerance = Scalar(0);
  if (auto b = family.norm_bound()) {
    r.verdict = Verdict::Holds;
    r.margin = *b;
    return r;
  }
  std::vector<Scalar> lower(h.N), upper(h.N);
  std::vector<std::size_t> arg(h.N, 0);
  for (std::size_t n = 0; n < h.N; ++n)
    for (std::size_t nu = 0; nu < family.size(); ++nu) {
      Scalar lo = prof[nu][n].total_abs, up = total_abs_upper(prof[nu][n], family.d());
      if (nu == 0 || above(lo, lower[n])) {
        lower[n] = lo;
        arg[n] = nu;
      }
      upper[n] = nu == 0 ? up : max(upper[n], up);
    }
  Growth g = growth_test(J.window(0, h.N), lower, upper);
  if (g.grows) {
    r.verdict = Verdict::FailsWithWitness;
    r.witness = Witness{"row-norm", g.n, arg[g.n], std::nullopt, std::nullopt, g.value};
    r.margin = g.value;
  } else {
    r.verdict = Verdict::UnknownAtHorizon;
    r.margin = Scalar(0);
  }
  return r;
}

void require_dual_base(const IdealSpec& J) {
  if (!J.has_dual_base())
    throw PreconditionError("ideal '" + J.label() + "' is not countably generated; no dual base to probe");
}

std::string prefix_for(const MatrixFamily& family) { return family.d() == 1 && family.m() == 1 ? "M" : "D"; }

Deviation row_sum_deviation(const Profiles& prof, const MatrixFamily& family, const OperatorEntry& t,
                            std::size_t N) {
  return worst_case(family.size(), N, family.m(), family.d(), [&](std::size_t nu, std::size_t n, std::size_t i,
                                                                  std::size_t j) {
    const RowProfile& p = prof[nu][n];
    return Sample{abs(p.sum(i, j) - t(i, j)), p.error};
  });
}

Deviation set_sum_deviation(const Profiles& prof, const MatrixFamily& family, std::size_t s, std::size_t N) {
  return worst_case(family.size(), N, family.m(), family.d(), [&](std::size_t nu, std::size_t n, std::size_t i,
                                                                  std::size_t j) {
    const RowProfile& p = prof[nu][n];
    return Sample{abs(p.set_sums[s](i, j)), p.error};
  });
}

}  // namespace

ConditionReport check_bounded_rows(const MatrixFamily& family, const HorizonParams& h, const std::string& label,
                                   Exec exec) {
  h.validate();
  return bounded_members_report(label, family, compute_profiles(family, h, {}, exec), h);
}

std::vector<ConditionReport> check_regular_family(const MatrixFamily& family, const IdealSpec& I, const IdealSpec& J,
                                                  const TargetOperator& target, const HorizonParams& h,
                                                  const std::vector<SetDescriptor>& test_sets, Exec exec) {
  h.validate();
  require_dual_base(J);
  if (target.t.rows() != family.m() || target.t.cols() != family.d())
    throw DimensionMismatch("target operator must be m x d");
  auto sets = test_battery(I, h, test_sets);
  Profiles prof = compute_profiles(family, h, sets, exec);
  std::string p = prefix_for(family);
  std::vector<ConditionReport> out;
  out.push_back(bounded_members_report(p + "1", family, prof, h));
  out.push_back(bounded_along_filter_report(p + "2", family, prof, J, h));
  out.push_back(null_limit_report(p + "3", row_sum_deviation(prof, family, target.t, h.N), J, h, "row-sum-deviation",
                             std::nullopt, true));
  std::vector<ConditionReport> parts;
  for (std::size_t s = 0; s < sets.size(); ++s)
    parts.push_back(null_limit_report(p + "4", set_sum_deviation(prof, family, s, h.N), J, h, "set-sum", sets[s], true));
  out.push_back(combine_set_reports(p + "4", parts, sets));
  return out;
}

std::vector<ConditionReport> check_regular_singleton(const OperatorMatrix& a, const IdealSpec& I, const IdealSpec& J,
                                                     const TargetOperator& target, const HorizonParams& h,
                                                     const std::vector<SetDescriptor>& test_sets, Exec exec) {
  return check_regular_family(MatrixFamily({a}), I, J, target, h, test_sets, exec);
}

std::vector<ConditionReport> check_maps_to_zero(const MatrixFamily& family, const IdealSpec& J,
                                                const HorizonParams& h, Exec exec) {
  h.validate();
  require_dual_base(J);
  Profiles prof = compute_profiles(family, h, {}, exec);
  std::vector<ConditionReport> out;
  out.push_back(bounded_members_report("D1", family, prof, h));
  out.push_back(bounded_along_filter_report("D2", family, prof, J, h));
  Deviation dev = worst_case(family.size(), h.N, family.m(), family.d(),
                             [&](std::size_t nu, std::size_t n, std::size_t i, std::size_t j) {
                               const RowProfile& p = prof[nu][n];
                               return Sample{p.abs_sum(i, j), p.error};
                             });
  out.push_back(null_limit_report("D3#", dev, J, h, "abs-row-sum", std::nullopt, true));
  return out;
}

namespace {

std::vector<ConditionReport> core_conditions(const MatrixFamily& family, const IdealSpec& I, const HorizonParams& h,
                                             const std::vector<SetDescriptor>& test_sets, Exec exec,
                                             const std::string& p) {
  h.validate();
  if (family.d() != 1 || family.m() != 1) throw PreconditionError("core conditions need scalar matrices");
  if (!family.norm_bound())
    throw PreconditionError("core conditions need a certified finite norm for every member");
  auto sets = test_battery(I, h, test_sets);
  Profiles prof = compute_profiles(family, h, sets, exec);
  IdealSpec fin = IdealSpec::fin();
  std::vector<ConditionReport> out;
  std::vector<ConditionReport> parts;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    Deviation dev = worst_case(family.size(), h.N, 1, 1, [&](std::size_t nu, std::size_t n, std::size_t, std::size_t) {
      const RowProfile& r = prof[nu][n];
      return Sample{r.set_abs_sums[s](0, 0), r.error};
    });
    parts.push_back(null_limit_report(p + "1", dev, fin, h, "abs-set-sum", sets[s], false));
  }
  out.push_back(combine_set_reports(p + "1", parts, sets));
  out.push_back(null_limit_report(p + "2", row_sum_deviation(prof, family, OperatorEntry::scalar(Scalar(1)), h.N), fin, h,
                             "row-sum-deviation", std::nullopt, false));
  Deviation dev3 = worst_case(family.size(), h.N, 1, 1, [&](std::size_t nu, std::size_t n, std::size_t, std::size_t) {
    const RowProfile& r = prof[nu][n];
    return Sample{abs(r.abs_sum(0, 0) - Scalar(1)), r.error};
  });
  out.push_back(null_limit_report(p + "3", dev3, fin, h, "abs-row-sum-deviation", std::nullopt, false));
  return out;
}

}  // namespace

std::vector<ConditionReport> check_core_inclusion(const OperatorMatrix& a, const IdealSpec& I, const HorizonParams& h,
                                                  const std::vector<SetDescriptor>& test_sets, Exec exec) {
  return core_conditions(MatrixFamily({a}), I, h, test_sets, exec, "C");
}

std::vector<ConditionReport> check_uniform_core_inclusion(const MatrixFamily& family, const IdealSpec& I,
                                                          const HorizonParams& h,
                                                          const std::vector<SetDescriptor>& test_sets, Exec exec) {
  return core_conditions(family, I, h, test_sets, exec, "L");
}

// ---- replay ---------------------------------------------------------------

Scalar replay_witness(const MatrixFamily& family, const Witness& w, const std::optional<TargetOperator>& target,
                      const Scalar& tol) {
  if (w.nu >= family.size()) throw ArityMismatch("witness member index out of range");
  const OperatorMatrix& a = family[w.nu];
  RowTail t = a.row_tail(w.n);
  std::vector<std::pair<std::size_t, OperatorEntry>> entries;
  Scalar error(0);
  if (t.kind == RowTail::Kind::Finite) {
    if (!t.empty)
      for (std::size_t k = t.lo; k <= t.hi; ++k) entries.emplace_back(k, a.entry(w.n, k));
  } else if (t.kind == RowTail::Kind::Geometric) {
    std::size_t K = truncation_index(t.coeff, t.ratio, Scalar(1), tol);
    for (std::size_t k = 0; k < K; ++k) entries.emplace_back(k, a.entry(w.n, k));
    Scalar p(1);
    for (std::size_t k = 0; k < K; ++k) p *= t.ratio;
    error = t.coeff * p / (Scalar(1) - t.ratio);
  } else {
    throw NotInDomain("witness row has no certified tail");
  }
  auto [i, j] = w.ij.value_or(std::pair<std::size_t, std::size_t>{0, 0});
  auto lower = [&error](const Scalar& v) { return max(Scalar(0), v - error); };
  Scalar acc(0);
  if (w.quantity == "row-norm") {
    for (const auto& [k, e] : entries) acc += entry_abs_sum(e);
    return acc;
  }
  if (w.quantity == "row-sum-deviation") {
    for (const auto& [k, e] : entries) acc += e(i, j);
    Scalar goal = target ? target->t(i, j) : Scalar(1);
    return lower(abs(acc - goal));
  }
  if (w.quantity == "set-sum") {
    for (const auto& [k, e] : entries)
      if (w.set->contains(k)) acc += e(i, j);
    return lower(abs(acc));
  }
  if (w.quantity == "abs-row-sum") {
    for (const auto& [k, e] : entries) acc += abs(e(i, j));
    return lower(acc);
  }
  if (w.quantity == "abs-set-sum") {
    for (const auto& [k, e] : entries)
      if (w.set->contains(k)) acc += abs(e(0, 0));
    return lower(acc);
  }
  if (w.quantity == "abs-row-sum-deviation") {
    for (const auto& [k, e] : entries) acc += abs(e(0, 0));
    return lower(abs(acc - Scalar(1)));
  }
  throw SchemaError("unknown witness quantity '" + w.quantity + "'");
}

}  // namespace summa
