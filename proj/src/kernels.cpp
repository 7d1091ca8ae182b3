#include "summa/kernels.hpp"

#include "summa/errors.hpp"

namespace summa::kernels {

std::vector<RowEvaluation> transform_rows(const OperatorMatrix& a, const VectorSequence& x, std::size_t N,
                                          const Scalar& tol, Exec exec) {
  std::vector<RowEvaluation> rows(N);
  for_each_index(N, exec, [&](std::size_t n) { rows[n] = row_apply(a, n, x, tol); });
  return rows;
}

namespace {

SparseRow certified_entries(const OperatorMatrix& a, std::size_t n, const Scalar& tol, Scalar& error) {
  RowTail t = a.row_tail(n);
  error = Scalar(0);
  switch (t.kind) {
    case RowTail::Kind::Finite:
      return a.finite_row(n);
    case RowTail::Kind::Geometric: {
      std::size_t K = truncation_index(t.coeff, t.ratio, Scalar(1), tol);
      Scalar p(1);
      for (std::size_t k = 0; k < K; ++k) p *= t.ratio;
      error = t.coeff * p / (Scalar(1) - t.ratio);
      return a.row_prefix(n, K);
    }
    case RowTail::Kind::ConstantFrom: {
      if (!a.entry(n, t.from).is_zero())
        throw DivergentGroupNorm("row " + std::to_string(n) + " of '" + a.label() + "' has a nonzero constant tail");
      return a.row_prefix(n, t.from);
    }
    case RowTail::Kind::Uncertified:
      break;
  }
  throw NotInDomain("row " + std::to_string(n) + " of '" + a.label() + "' has no certified tail");
}

}  // namespace

RowProfile row_profile(const OperatorMatrix& a, std::size_t n, const std::vector<SetDescriptor>& sets,
                       const Scalar& tol) {
  RowProfile p;
  SparseRow row = certified_entries(a, n, tol, p.error);
  p.sum = OperatorEntry(a.m(), a.d());
  p.abs_sum = OperatorEntry(a.m(), a.d());
  p.norm = Scalar(0);
  p.total_abs = Scalar(0);
  p.set_sums.assign(sets.size(), OperatorEntry(a.m(), a.d()));
  p.set_abs_sums.assign(sets.size(), OperatorEntry(a.m(), a.d()));
  for (const auto& [k, e] : row) {
    OperatorEntry ab = entry_abs(e);
    p.sum += e;
    p.abs_sum += ab;
    p.norm += entry_norm(e);
    p.total_abs += entry_abs_sum(e);
    for (std::size_t s = 0; s < sets.size(); ++s) {
      if (!sets[s].contains(k)) continue;
      p.set_sums[s] += e;
      p.set_abs_sums[s] += ab;
    }
  }
  return p;
}

std::vector<RowProfile> row_profiles(const OperatorMatrix& a, std::size_t N, const std::vector<SetDescriptor>& sets,
                                     const Scalar& tol, Exec exec) {
  std::vector<RowProfile> out(N);
  for_each_index(N, exec, [&](std::size_t n) { out[n] = row_profile(a, n, sets, tol); });
  return out;
}

}  // namespace summa::kernels
