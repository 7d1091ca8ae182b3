#include "summa/sigma.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "summa/errors.hpp"
#include "summa/kernels.hpp"

namespace summa {

SigmaMap SigmaMap::shift(std::string label) {
  SigmaMap s;
  s.kind_ = Kind::Shift;
  s.label_ = std::move(label);
  return s;
}

SigmaMap SigmaMap::affine(std::size_t a, std::size_t b, std::string label) {
  // b = 0 would fix 0 (a*0 + 0 = 0), a = 0 is not injective
  if (a < 1 || b < 1) throw SchemaError("affine sigma needs a >= 1 and b >= 1");
  SigmaMap s;
  s.kind_ = Kind::Affine;
  s.label_ = std::move(label);
  s.a_ = a;
  s.b_ = b;
  return s;
}

SigmaMap SigmaMap::blocks(std::vector<std::size_t> perm, std::string label) {
  if (perm.empty()) throw SchemaError("block sigma needs a nonempty permutation");
  std::vector<std::size_t> inverse(perm.size(), perm.size());
  for (std::size_t r = 0; r < perm.size(); ++r) {
    if (perm[r] >= perm.size() || inverse[perm[r]] != perm.size())
      throw SchemaError("block sigma: [" + std::to_string(perm.size()) + "] entries must form a permutation");
    inverse[perm[r]] = r;
  }
  SigmaMap s;
  s.kind_ = Kind::Blocks;
  s.label_ = std::move(label);
  s.perm_ = std::move(perm);
  s.inverse_ = std::move(inverse);
  return s;
}

std::size_t SigmaMap::operator()(std::size_t n) const {
  switch (kind_) {
    case Kind::Shift:
      return n + 1;
    case Kind::Affine:
      return a_ * n + b_;
    case Kind::Blocks: {
      std::size_t L = perm_.size();
      return (n / L + 1) * L + perm_[n % L];
    }
  }
  return n + 1;
}

std::optional<std::size_t> SigmaMap::preimage(std::size_t k) const {
  switch (kind_) {
    case Kind::Shift:
      if (k == 0) return std::nullopt;
      return k - 1;
    case Kind::Affine:
      if (k < b_ || (k - b_) % a_) return std::nullopt;
      return (k - b_) / a_;
    case Kind::Blocks: {
      std::size_t L = perm_.size();
      if (k < L) return std::nullopt;
      return (k / L - 1) * L + inverse_[k % L];
    }
  }
  return std::nullopt;
}

SigmaMap::SampledCheck SigmaMap::sampled_check(std::size_t N) const {
  SampledCheck c;
  c.samples = N;
  std::set<std::size_t> image;
  for (std::size_t n = 0; n < N; ++n) {
    if (!image.insert((*this)(n)).second) c.injective = false;
    std::size_t v = n;
    for (std::size_t p = 0; p < N && c.aperiodic; ++p) {
      v = (*this)(v);
      if (v == n) c.aperiodic = false;
    }
  }
  return c;
}

// ---- matrices -------------------------------------------------------------------

namespace {

Scalar inverse(std::size_t n) { return Scalar(make_rational(1, static_cast<long>(n))); }

std::string sigma_tag(const SigmaMap& sigma, std::size_t nu) {
  return sigma.label() + "," + std::to_string(nu);
}

}  // namespace

OperatorMatrix sigma_matrix(const SigmaMap& sigma, std::size_t nu, std::size_t d) {
  auto entry = [sigma, nu, d](std::size_t n, std::size_t k) {
    auto pre = sigma.preimage(k);
    if (pre && *pre >= nu && *pre <= nu + n) return OperatorEntry::identity(d, inverse(n + 1));
    return OperatorEntry(d, d);
  };
  auto support = [sigma, nu](std::size_t n) {
    std::size_t lo = sigma(nu), hi = lo;
    for (std::size_t h = 1; h <= n; ++h) {
      std::size_t c = sigma(nu + h);
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    return std::optional(std::pair<std::size_t, std::size_t>(lo, hi));
  };
  auto row = [sigma, nu, d](std::size_t n) {
    std::vector<std::size_t> cols(n + 1);
    for (std::size_t h = 0; h <= n; ++h) cols[h] = sigma(nu + h);
    std::sort(cols.begin(), cols.end());
    OperatorEntry e = OperatorEntry::identity(d, inverse(n + 1));
    SparseRow r;
    r.reserve(n + 1);
    for (std::size_t k : cols) r.emplace_back(k, e);
    return r;
  };
  return OperatorMatrix("F[" + sigma_tag(sigma, nu) + "]", d, d, entry, FiniteSupport{support}, Scalar(1), row);
}

OperatorMatrix compose_sigma(const OperatorMatrix& a, const SigmaMap& sigma, std::size_t nu) {
  auto entry = [a, sigma, nu](std::size_t n, std::size_t k) {
    OperatorEntry acc(a.m(), a.d());
    for (std::size_t h = 0; h <= n; ++h) acc += a.entry(sigma(nu + h), k);
    acc *= inverse(n + 1);
    return acc;
  };
  std::string label = a.label() + "@F[" + sigma_tag(sigma, nu) + "]";
  RowTail::Kind kind = a.tail_kind();

  if (kind == RowTail::Kind::Finite) {
    auto envelope = [a, sigma, nu](std::size_t n) {
      RowTail out = RowTail::none();
      for (std::size_t h = 0; h <= n; ++h) {
        RowTail t = a.row_tail(sigma(nu + h));
        if (t.kind != RowTail::Kind::Finite) return RowTail{};
        if (t.empty) continue;
        if (out.empty) {
          out = RowTail::finite(t.lo, t.hi);
        } else {
          out.lo = std::min(out.lo, t.lo);
          out.hi = std::max(out.hi, t.hi);
        }
      }
      return out;
    };
    auto row = [a, sigma, nu](std::size_t n) {
      std::map<std::size_t, OperatorEntry> acc;
      for (std::size_t h = 0; h <= n; ++h)
        for (auto& [k, e] : a.finite_row(sigma(nu + h))) {
          auto [it, fresh] = acc.try_emplace(k, e);
          if (!fresh) it->second += e;
        }
      Scalar w = inverse(n + 1);
      SparseRow r;
      for (auto& [k, e] : acc) {
        if (e.is_zero()) continue;
        r.emplace_back(k, w * e);
      }
      return r;
    };
    return OperatorMatrix(label, a.d(), a.m(), entry, PerRowTail{envelope, RowTail::Kind::Finite}, a.norm_bound(),
                          row);
  }

  if (kind == RowTail::Kind::Geometric) {
    // sum_h c_h r_h^k <= (sum_h c_h) (max_h r_h)^k
    auto envelope = [a, sigma, nu](std::size_t n) {
      RowTail out;
      out.kind = RowTail::Kind::Geometric;
      out.coeff = Scalar(0);
      out.ratio = Scalar(0);
      for (std::size_t h = 0; h <= n; ++h) {
        RowTail t = a.row_tail(sigma(nu + h));
        if (t.kind != RowTail::Kind::Geometric) return RowTail{};
        out.coeff += t.coeff;
        out.ratio = max(out.ratio, t.ratio);
      }
      out.coeff *= inverse(n + 1);
      return out;
    };
    return OperatorMatrix(label, a.d(), a.m(), entry, PerRowTail{envelope, RowTail::Kind::Geometric},
                          a.norm_bound());
  }
  return OperatorMatrix(label, a.d(), a.m(), entry, Uncertified{}, a.norm_bound());
}

// ---- sigma limits -----------------------------------------------------------------

namespace {

// Periodic tail and sigma(n) = a*n + b: the window mean of x over
// {sigma(nu), ..., sigma(nu+n)} tends, uniformly in nu, to the mean of the
// block over the residues reached by a*h + b modulo gcd(a, period).
Vector closed_form_mean(const VectorSequence& x, std::size_t a, std::size_t b) {
  std::vector<Vector> block = x.block();
  std::size_t p = block.size();
  std::size_t g = std::gcd(a, p);
  long start = static_cast<long>(x.tail_start());
  long r = ((static_cast<long>(b) - start) % static_cast<long>(g) + static_cast<long>(g)) % static_cast<long>(g);
  Vector sum = zero_vector(x.dim());
  std::size_t count = 0;
  for (std::size_t q = static_cast<std::size_t>(r); q < p; q += g) {
    sum = add(sum, block[q]);
    ++count;
  }
  return scale(inverse(count), sum);
}

}  // namespace

SigmaLimit sigma_limit(const VectorSequence& x, const SigmaMap& sigma, const IdealSpec& ideal,
                       const HorizonParams& h, Exec exec) {
  h.validate();
  if (!x.bound()) throw PreconditionError("sequence '" + x.label() + "' is not certified bounded");
  SigmaLimit out;
  if (x.decidable() && sigma.kind() != SigmaMap::Kind::Blocks) {
    Vector mu = closed_form_mean(x, sigma.a(), sigma.b());
    out.verdict = Verdict::Holds;
    out.eta = mu;
    out.exact = std::all_of(mu.begin(), mu.end(), [](const Scalar& s) { return s.is_exact(); });
    out.all_nu = true;
    out.route = "closed-form";
    return out;
  }
  std::vector<OperatorMatrix> members;
  for (std::size_t nu = 0; nu < h.nu_max; ++nu) members.push_back(sigma_matrix(sigma, nu, x.dim()));
  out.uniform = uniform_limit(MatrixFamily(std::move(members)), x, ideal, h, exec);
  out.verdict = out.uniform.verdict;
  out.eta = out.uniform.eta;
  out.exact = out.uniform.exact;
  out.route = "uniform";
  return out;
}

// ---- almost regularity ----------------------------------------------------------------

namespace {

// Worst case over nu < nu_max and (i, j) of |mean_{h<=n} s(sigma(nu+h))(i,j) - t(i,j)|.
DeviationSeries sigma_mean_deviation(const std::vector<RowProfile>& prof, const SigmaMap& sigma,
                                     const HorizonParams& h, const OperatorEntry& t,
                                     const std::function<const OperatorEntry&(const RowProfile&)>& pick) {
  DeviationSeries dev;
  dev.upper.resize(h.N);
  dev.lower.resize(h.N);
  dev.nu.assign(h.N, 0);
  dev.ij.assign(h.N, {0, 0});
  for (std::size_t nu = 0; nu < h.nu_max; ++nu) {
    OperatorEntry acc(t.rows(), t.cols());
    Scalar err(0);
    for (std::size_t n = 0; n < h.N; ++n) {
      const RowProfile& p = prof[sigma(nu + n)];
      acc += pick(p);
      err += p.error;
      Scalar w = inverse(n + 1), e = err * w;
      for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) {
          Scalar v = abs(acc(i, j) * w - t(i, j));
          Scalar up = v + e, lo = max(Scalar(0), v - e);
          bool first = nu == 0 && i == 0 && j == 0;
          dev.upper[n] = first ? up : max(dev.upper[n], up);
          if (first || certainly_lt(dev.lower[n], lo)) {
            dev.lower[n] = lo;
            dev.nu[n] = nu;
            dev.ij[n] = {i, j};
          }
        }
    }
  }
  return dev;
}

Verdict conjunction(Verdict a, Verdict b) {
  if (a == Verdict::FailsWithWitness || b == Verdict::FailsWithWitness) return Verdict::FailsWithWitness;
  if (a == Verdict::Holds && b == Verdict::Holds) return Verdict::Holds;
  return Verdict::UnknownAtHorizon;
}

}  // namespace

AlmostRegularReport check_almost_regular(const OperatorMatrix& a, const SigmaMap& sigma, const IdealSpec& I,
                                         const IdealSpec& J, const TargetOperator& target, const HorizonParams& h,
                                         const std::vector<SetDescriptor>& test_sets, Exec exec) {
  h.validate();
  if (!J.has_dual_base())
    throw PreconditionError("ideal '" + J.label() + "' is not countably generated; no dual base to probe");
  if (target.t.rows() != a.m() || target.t.cols() != a.d())
    throw DimensionMismatch("target operator must be m x d");
  auto sets = test_battery(I, h, test_sets);
  AlmostRegularReport rep;

  rep.k_route.push_back(check_bounded_rows(MatrixFamily({a}), h, "K1", exec));

  std::size_t rows = 0;
  for (std::size_t nu = 0; nu < h.nu_max; ++nu)
    for (std::size_t n = 0; n < h.N; ++n) rows = std::max(rows, sigma(nu + n) + 1);
  auto prof = kernels::row_profiles(a, rows, sets, h.truncation_tol(), exec);

  rep.k_route.push_back(null_limit_report(
      "K2", sigma_mean_deviation(prof, sigma, h, target.t, [](const RowProfile& p) -> const OperatorEntry& {
        return p.sum;
      }),
      J, h, "row-sum-deviation", std::nullopt, true));
  OperatorEntry zero(a.m(), a.d());
  std::vector<ConditionReport> parts;
  for (std::size_t s = 0; s < sets.size(); ++s)
    parts.push_back(null_limit_report(
        "K3", sigma_mean_deviation(prof, sigma, h, zero, [s](const RowProfile& p) -> const OperatorEntry& {
          return p.set_sums[s];
        }),
        J, h, "set-sum", sets[s], true));
  rep.k_route.push_back(combine_set_reports("K3", parts, sets));

  std::vector<OperatorMatrix> members;
  for (std::size_t nu = 0; nu < h.nu_max; ++nu) members.push_back(compose_sigma(a, sigma, nu));
  rep.family_route = check_regular_family(MatrixFamily(std::move(members)), I, J, target, h, test_sets, exec);

  const auto& f = rep.family_route;
  rep.routes_agree = rep.k_route[0].verdict == conjunction(f[0].verdict, f[1].verdict) &&
                     rep.k_route[1].verdict == f[2].verdict && rep.k_route[2].verdict == f[3].verdict;
  return rep;
}

}  // namespace summa
