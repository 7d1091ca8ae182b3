#include "summa/selection.hpp"

#include <algorithm>
#include <set>

#include "summa/errors.hpp"
#include "summa/transform.hpp"

namespace summa {

namespace {

void check_indices(const std::vector<std::size_t>& v, std::size_t arity) {
  for (std::size_t nu : v)
    if (nu >= arity)
      throw ArityMismatch("selection index " + std::to_string(nu) + " is not below arity " + std::to_string(arity));
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

SelectionSeq SelectionSeq::eventually_periodic(std::size_t arity, std::vector<std::size_t> prefix,
                                               std::vector<std::size_t> period) {
  if (arity == 0) throw ArityMismatch("selection over an empty family");
  if (period.empty()) throw SchemaError("selection period must be nonempty");
  check_indices(prefix, arity);
  check_indices(period, arity);
  SelectionSeq s;
  s.kind_ = Kind::EventuallyPeriodic;
  s.arity_ = arity;
  s.prefix_ = std::move(prefix);
  s.period_ = std::move(period);
  return s;
}

SelectionSeq SelectionSeq::explicit_prefix(std::size_t arity, std::vector<std::size_t> prefix,
                                           std::size_t default_nu) {
  if (arity == 0) throw ArityMismatch("selection over an empty family");
  check_indices(prefix, arity);
  check_indices({default_nu}, arity);
  SelectionSeq s;
  s.kind_ = Kind::Explicit;
  s.arity_ = arity;
  s.prefix_ = std::move(prefix);
  s.default_ = default_nu;
  return s;
}

SelectionSeq SelectionSeq::adversarial(std::size_t arity, std::vector<std::size_t> table,
                                       std::function<std::size_t(std::size_t)> beyond, std::string basis) {
  check_indices(table, arity);
  SelectionSeq s;
  s.kind_ = Kind::Adversarial;
  s.arity_ = arity;
  s.prefix_ = std::move(table);
  s.basis_ = std::move(basis);
  s.beyond_ = std::make_shared<const std::function<std::size_t(std::size_t)>>(std::move(beyond));
  return s;
}

SelectionSeq SelectionSeq::split(std::size_t arity, std::size_t a, std::size_t b, const IdealSpec& ideal) {
  check_indices({a, b}, arity);
  SelectionSeq s;
  s.kind_ = Kind::Split;
  s.arity_ = arity;
  s.period_ = {a, b};
  s.basis_ = ideal.label();
  s.beyond_ = std::make_shared<const std::function<std::size_t(std::size_t)>>(
      [ideal, a, b](std::size_t n) { return ideal.split(n) ? b : a; });
  return s;
}

std::size_t SelectionSeq::operator()(std::size_t n) const {
  switch (kind_) {
    case Kind::EventuallyPeriodic:
      if (n < prefix_.size()) return prefix_[n];
      return period_[(n - prefix_.size()) % period_.size()];
    case Kind::Explicit:
      return n < prefix_.size() ? prefix_[n] : default_;
    case Kind::Adversarial:
      if (n < prefix_.size()) return prefix_[n];
      return (*beyond_)(n);
    case Kind::Split:
      return (*beyond_)(n);
  }
  return 0;
}

std::vector<std::size_t> SelectionSeq::first(std::size_t count) const {
  std::vector<std::size_t> out(count);
  for (std::size_t n = 0; n < count; ++n) out[n] = (*this)(n);
  return out;
}

std::string SelectionSeq::str() const {
  switch (kind_) {
    case Kind::EventuallyPeriodic:
      return "prefix " + join(prefix_) + " period " + join(period_);
    case Kind::Explicit:
      return "prefix " + join(prefix_) + " then " + std::to_string(default_);
    case Kind::Adversarial:
      return "adversarial (" + basis_ + ") over " + std::to_string(prefix_.size()) + " rows";
    case Kind::Split:
      return "split of '" + basis_ + "': " + std::to_string(period_[0]) + "/" + std::to_string(period_[1]);
  }
  return {};
}

OperatorMatrix select_matrix(const MatrixFamily& family, const SelectionSeq& s) {
  if (s.arity() != family.size())
    throw ArityMismatch("selection arity " + std::to_string(s.arity()) + " does not match family size " +
                        std::to_string(family.size()));
  if (family.size() == 1) return family[0];
  auto members = family.members();
  auto entry = [members, s](std::size_t n, std::size_t k) { return members[s(n)].entry(n, k); };
  RowTail::Kind kind = members.front().tail_kind();
  bool sparse = true;
  for (const auto& a : members) {
    sparse = sparse && a.has_sparse_rows();
    RowTail::Kind k = a.tail_kind();
    if (k == kind) continue;
    bool summable = (k == RowTail::Kind::Finite || k == RowTail::Kind::Geometric) &&
                    (kind == RowTail::Kind::Finite || kind == RowTail::Kind::Geometric);
    kind = summable ? RowTail::Kind::Geometric : RowTail::Kind::Uncertified;
  }
  PerRowTail tail{[members, s](std::size_t n) { return members[s(n)].row_tail(n); }, kind};
  OperatorMatrix::RowFn row;
  if (sparse) row = [members, s](std::size_t n) { return members[s(n)].finite_row(n); };
  return OperatorMatrix("select(" + s.str() + ")", family.d(), family.m(), entry, tail, family.norm_bound(), row);
}

// ---- enumeration ------------------------------------------------------------

namespace {

std::vector<std::size_t> primitive_root(const std::vector<std::size_t>& w) {
  for (std::size_t p = 1; p < w.size(); ++p) {
    if (w.size() % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < w.size() && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return {w.begin(), w.begin() + static_cast<long>(p)};
  }
  return w;
}

// Shortest prefix and primitive period describing the same sequence.
void normalize(std::vector<std::size_t>& prefix, std::vector<std::size_t>& period) {
  period = primitive_root(period);
  while (!prefix.empty() && prefix.back() == period.back()) {
    prefix.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
}

bool next_word(std::vector<std::size_t>& w, std::size_t arity) {
  for (std::size_t i = w.size(); i-- > 0;) {
    if (++w[i] < arity) return true;
    w[i] = 0;
  }
  return false;
}

}  // namespace

std::vector<SelectionSeq> enumerate_selections(std::size_t arity, const EnumParams& params) {
  if (arity == 0) throw ArityMismatch("selection over an empty family");
  if (params.period == 0) throw SchemaError("enumeration period length must be at least 1");
  // raw word count: (sum_{p<=P} k^p) * (sum_{1<=q<=Q} k^q)
  auto geometric_sum = [arity, &params](std::size_t from, std::size_t to) {
    std::size_t total = 0, power = 1;
    for (std::size_t i = 0; i <= to; ++i) {
      if (i >= from) total += power;
      if (total > params.budget) return params.budget + 1;
      power *= arity;
    }
    return total;
  };
  std::size_t prefixes = geometric_sum(0, params.prefix), periods = geometric_sum(1, params.period);
  if (prefixes > params.budget || periods > params.budget || prefixes * periods > params.budget)
    throw BudgetExceeded("enumerating selections with arity " + std::to_string(arity) + ", prefix " +
                         std::to_string(params.prefix) + ", period " + std::to_string(params.period) +
                         " exceeds the budget of " + std::to_string(params.budget));
  std::vector<SelectionSeq> out;
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> seen;
  for (std::size_t p = 0; p <= params.prefix; ++p) {
    std::vector<std::size_t> pre(p, 0);
    do {
      for (std::size_t q = 1; q <= params.period; ++q) {
        std::vector<std::size_t> per(q, 0);
        do {
          std::vector<std::size_t> np = pre, nq = per;
          normalize(np, nq);
          if (!seen.insert({np, nq}).second) continue;
          out.push_back(SelectionSeq::eventually_periodic(arity, std::move(np), std::move(nq)));
        } while (next_word(per, arity));
      }
    } while (next_word(pre, arity));
  }
  return out;
}

// ---- uniform limits -----------------------------------------------------------

namespace {

std::vector<std::vector<RowEvaluation>> member_rows(const MatrixFamily& family, const VectorSequence& x,
                                                   const HorizonParams& h, Exec exec) {
  std::vector<std::vector<RowEvaluation>> rows;
  for (const auto& a : family.members()) rows.push_back(transform(a, x, h.N, h.truncation_tol(), exec));
  return rows;
}

struct Deviation {
  std::vector<Scalar> upper, lower;
  std::vector<std::size_t> arg;
};

Deviation deviation_from(const std::vector<std::vector<RowEvaluation>>& rows, const Vector& eta) {
  Deviation dev;
  std::size_t N = rows.front().size();
  dev.upper.resize(N);
  dev.lower.resize(N);
  dev.arg.assign(N, 0);
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t nu = 0; nu < rows.size(); ++nu) {
      const RowEvaluation& r = rows[nu][n];
      Scalar d = norm1(subtract(r.value, eta));
      Scalar up = d + r.trunc_error, lo = max(Scalar(0), d - r.trunc_error);
      if (nu == 0) {
        dev.upper[n] = up;
        dev.lower[n] = lo;
        continue;
      }
      dev.upper[n] = max(dev.upper[n], up);
      if (certainly_lt(dev.lower[n], lo)) {
        dev.lower[n] = lo;
        dev.arg[n] = nu;
      }
    }
  return dev;
}

bool vector_exact(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_exact(); });
}

// Limit of one transform: Some, None, or undecided (nullopt).
struct SingleLimit {
  std::optional<Verdict> verdict;
  std::optional<Vector> eta;
};

SingleLimit single_limit(const std::vector<RowEvaluation>& rows, std::size_t dim, const IdealSpec& ideal,
                         const HorizonParams& h) {
  SingleLimit out;
  try {
    IdealLimit l = ideal_lim(as_sampled(rows, dim), ideal, h);
    out.verdict = l.eta ? Verdict::Holds : Verdict::FailsWithWitness;
    out.eta = l.eta;
  } catch (const HorizonTooSmall&) {
    out.verdict = Verdict::UnknownAtHorizon;
  }
  return out;
}

UniformLimit uniform_from_rows(const std::vector<std::vector<RowEvaluation>>& rows, std::size_t dim,
                               const IdealSpec& ideal, const HorizonParams& h) {
  UniformLimit out;
  SingleLimit base = single_limit(rows.front(), dim, ideal, h);
  if (base.verdict == Verdict::UnknownAtHorizon) {
    out.note = "limit of member 0 undecided at horizon";
    return out;
  }
  if (!base.eta) {
    out.verdict = Verdict::FailsWithWitness;
    out.witness_nu = 0;
    out.note = "member 0 does not converge along the ideal";
    return out;
  }
  Deviation dev = deviation_from(rows, *base.eta);
  NullLimitDecision dec = decide_null_limit(dev.upper, dev.lower, ideal, h);
  out.verdict = dec.verdict;
  out.radius = dec.value;
  if (dec.verdict == Verdict::Holds) {
    out.eta = base.eta;
    out.t = dec.t;
    out.exact = dec.exact_zero && vector_exact(*base.eta);
  } else if (dec.verdict == Verdict::FailsWithWitness) {
    out.witness_n = dec.n;
    out.witness_nu = dev.arg[dec.n];
    out.note = "member " + std::to_string(dev.arg[dec.n]) + " stays away from the limit of member 0";
  } else {
    out.note = "worst deviation undecided at horizon";
  }
  return out;
}

}  // namespace

UniformLimit uniform_limit(const MatrixFamily& family, const VectorSequence& x, const IdealSpec& ideal,
                           const HorizonParams& h, Exec exec) {
  h.validate();
  if (x.dim() != family.d()) throw DimensionMismatch("sequence '" + x.label() + "' does not match the family");
  return uniform_from_rows(member_rows(family, x, h, exec), family.m(), ideal, h);
}

// ---- equivalence -------------------------------------------------------------

namespace {

// Row n of the selection through precomputed member rows.
std::vector<RowEvaluation> selected_rows(const std::vector<std::vector<RowEvaluation>>& rows,
                                         const SelectionSeq& s) {
  std::size_t N = rows.front().size();
  std::vector<RowEvaluation> out(N);
  for (std::size_t n = 0; n < N; ++n) out[n] = rows[s(n)][n];
  return out;
}

SelectionSeq deviation_adversary(const MatrixFamily& family, const VectorSequence& x, const Vector& anchor,
                                 const Deviation& dev, const HorizonParams& h) {
  auto members = family.members();
  Scalar tol = h.truncation_tol();
  auto beyond = [members, x, anchor, tol](std::size_t n) {
    std::size_t best = 0;
    Scalar top;
    for (std::size_t nu = 0; nu < members.size(); ++nu) {
      Scalar d = norm1(subtract(row_apply(members[nu], n, x, tol).value, anchor));
      if (nu == 0 || certainly_lt(top, d)) {
        top = d;
        best = nu;
      }
    }
    return best;
  };
  return SelectionSeq::adversarial(family.size(), dev.arg, beyond, "largest deviation from " + format_vector(anchor));
}

}  // namespace

EquivalenceReport test_theorem_equivalence(const MatrixFamily& family, const VectorSequence& x,
                                           const IdealSpec& ideal, const HorizonParams& h,
                                           const EnumParams& params, Exec exec) {
  h.validate();
  if (!ideal.has_dual_base())
    throw PreconditionError("the equivalence test needs a countably generated ideal; '" + ideal.label() +
                            "' is not");
  if (x.dim() != family.d()) throw DimensionMismatch("sequence '" + x.label() + "' does not match the family");
  EquivalenceReport rep;
  auto rows = member_rows(family, x, h, exec);
  const std::size_t dim = family.m();

  UniformLimit ul = uniform_from_rows(rows, dim, ideal, h);
  rep.item_i = ul.verdict;
  rep.eta1 = ul.eta;

  std::vector<SelectionSeq> tests = enumerate_selections(family.size(), params);
  SingleLimit base = single_limit(rows.front(), dim, ideal, h);
  Vector anchor = base.eta ? *base.eta : zero_vector(dim);
  tests.push_back(deviation_adversary(family, x, anchor, deviation_from(rows, anchor), h));
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = a + 1; b < family.size(); ++b) tests.push_back(SelectionSeq::split(family.size(), a, b, ideal));
  rep.selections_tested = tests.size();

  std::vector<SingleLimit> limits(tests.size());
  std::vector<NullLimitDecision> toward(tests.size());
  for_each_index(tests.size(), exec, [&](std::size_t i) {
    auto b = selected_rows(rows, tests[i]);
    limits[i] = single_limit(b, dim, ideal, h);
    if (!base.eta) return;
    std::vector<Scalar> up(b.size()), lo(b.size());
    for (std::size_t n = 0; n < b.size(); ++n) {
      Scalar d = norm1(subtract(b[n].value, *base.eta));
      up[n] = d + b[n].trunc_error;
      lo[n] = max(Scalar(0), d - b[n].trunc_error);
    }
    toward[i] = decide_null_limit(up, lo, ideal, h);
  });

  // (ii): every tested B converges along the ideal.
  rep.item_ii = Verdict::Holds;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    if (limits[i].verdict == Verdict::FailsWithWitness) {
      rep.item_ii = Verdict::FailsWithWitness;
      rep.witness = tests[i];
      rep.witness_item = "ii";
      break;
    }
    if (limits[i].verdict == Verdict::UnknownAtHorizon) rep.item_ii = Verdict::UnknownAtHorizon;
  }

  // (iii): every tested B converges to the limit of the constant-0 selection.
  if (base.verdict == Verdict::UnknownAtHorizon) {
    rep.item_iii = Verdict::UnknownAtHorizon;
  } else if (!base.eta) {
    rep.item_iii = Verdict::FailsWithWitness;
    if (!rep.witness) {
      rep.witness = tests.front();
      rep.witness_item = "iii";
    }
  } else {
    rep.eta2 = base.eta;
    rep.item_iii = Verdict::Holds;
    for (std::size_t i = 0; i < tests.size(); ++i) {
      if (toward[i].verdict == Verdict::FailsWithWitness) {
        rep.item_iii = Verdict::FailsWithWitness;
        if (!rep.witness) {
          rep.witness = tests[i];
          rep.witness_item = "iii";
        }
        break;
      }
      if (toward[i].verdict == Verdict::UnknownAtHorizon) rep.item_iii = Verdict::UnknownAtHorizon;
    }
  }

  auto definite = [](Verdict v) { return v != Verdict::UnknownAtHorizon; };
  if (definite(rep.item_i) && definite(rep.item_iii) && rep.item_i != rep.item_iii) {
    rep.counterexample = true;
    rep.note = "items (i) and (iii) disagree";
  } else if (rep.item_i == Verdict::Holds && rep.item_ii == Verdict::FailsWithWitness) {
    rep.counterexample = true;
    rep.note = "item (i) holds but a selected matrix diverges";
  } else if (rep.eta1 && rep.eta2 && *rep.eta1 != *rep.eta2) {
    rep.counterexample = true;
    rep.note = "the limits of items (i) and (iii) differ";
  }
  return rep;
}

// ---- uniform limsup --------------------------------------------------------------

namespace {

void require_scalar_bounded(const MatrixFamily& family, const VectorSequence& x) {
  if (family.d() != 1 || family.m() != 1) throw PreconditionError("the limsup identity needs scalar matrices");
  if (!family.norm_bound())
    throw PreconditionError("the limsup identity needs a certified norm bound for every member");
  if (!x.bound()) throw PreconditionError("sequence '" + x.label() + "' is not certified bounded");
}

std::size_t argmax_member(const std::vector<std::vector<RowEvaluation>>& rows, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t nu = 1; nu < rows.size(); ++nu)
    if (certainly_lt(rows[best][n].value[0], rows[nu][n].value[0])) best = nu;
  return best;
}

SelectionSeq limsup_adversary(const MatrixFamily& family, const VectorSequence& x,
                              const std::vector<std::vector<RowEvaluation>>& rows, const HorizonParams& h) {
  std::vector<std::size_t> table(h.N);
  for (std::size_t n = 0; n < h.N; ++n) table[n] = argmax_member(rows, n);
  auto members = family.members();
  Scalar tol = h.truncation_tol();
  auto beyond = [members, x, tol](std::size_t n) {
    std::size_t best = 0;
    Scalar top;
    for (std::size_t nu = 0; nu < members.size(); ++nu) {
      Scalar v = row_apply(members[nu], n, x, tol).value[0];
      if (nu == 0 || certainly_lt(top, v)) {
        top = v;
        best = nu;
      }
    }
    return best;
  };
  return SelectionSeq::adversarial(family.size(), std::move(table), beyond, "largest row value");
}

}  // namespace

SelectionSeq adversarial_limsup_selection(const MatrixFamily& family, const VectorSequence& x,
                                          const HorizonParams& h, Exec exec) {
  h.validate();
  require_scalar_bounded(family, x);
  return limsup_adversary(family, x, member_rows(family, x, h, exec), h);
}

UniformLimsupReport verify_uniform_limsup_identity(const MatrixFamily& family, const VectorSequence& x,
                                                   const IdealSpec& ideal, const HorizonParams& h,
                                                   const EnumParams& params, Exec exec) {
  h.validate();
  require_scalar_bounded(family, x);
  auto rows = member_rows(family, x, h, exec);
  UniformLimsupReport rep;

  std::vector<RowEvaluation> top(h.N);
  for (std::size_t n = 0; n < h.N; ++n) top[n] = rows[argmax_member(rows, n)][n];
  rep.lhs = ideal_limsup(as_sampled(top, 1), ideal, h);

  SelectionSeq adv = limsup_adversary(family, x, rows, h);
  OperatorMatrix b = select_matrix(family, adv);
  rep.adversarial_rhs = ideal_limsup(as_sampled(transform(b, x, h.N, h.truncation_tol(), exec), 1), ideal, h);
  rep.adversarial = adv;

  std::vector<SelectionSeq> tests = enumerate_selections(family.size(), params);
  rep.selections_tested = tests.size();
  std::vector<Scalar> values(tests.size());
  for_each_index(tests.size(), exec, [&](std::size_t i) {
    values[i] = ideal_limsup(as_sampled(selected_rows(rows, tests[i]), 1), ideal, h);
  });
  std::size_t worst = 0;
  for (std::size_t i = 1; i < tests.size(); ++i)
    if (certainly_lt(values[worst], values[i])) worst = i;
  rep.rhs_lower_bound = values[worst];
  rep.worst = tests[worst];

  Truth attained = equal(rep.adversarial_rhs, rep.lhs);
  Truth dominated = less_equal(rep.rhs_lower_bound, rep.lhs);
  if (attained == Truth::True && dominated == Truth::True)
    rep.verdict = Verdict::Holds;
  else if (attained == Truth::False || dominated == Truth::False)
    rep.verdict = Verdict::FailsWithWitness;
  else
    rep.verdict = Verdict::UnknownAtHorizon;
  return rep;
}

}  // namespace summa
