#include "summa/transform.hpp"

#include "summa/errors.hpp"
#include "summa/kernels.hpp"

namespace summa {

namespace {

constexpr std::size_t kMaxTruncation = std::size_t{1} << 20;

std::string row_name(const OperatorMatrix& a, std::size_t n) {
  return "row " + std::to_string(n) + " of '" + a.label() + "'";
}

Scalar geometric_tail(const Scalar& coeff, const Scalar& ratio, std::size_t K) {
  Scalar p(1);
  for (std::size_t k = 0; k < K; ++k) p *= ratio;
  return coeff * p / (Scalar(1) - ratio);
}

// Whether C x_k = 0 for every k >= from, for a sequence with decidable tail.
bool tail_annihilated(const OperatorEntry& c, const VectorSequence& x, std::size_t from) {
  for (std::size_t k = from; k < x.tail_start(); ++k)
    if (!norm1(c.apply(x.term(k))).is_zero()) return false;
  for (const auto& v : x.block())
    if (!norm1(c.apply(v)).is_zero()) return false;
  return true;
}

Vector accumulate(const SparseRow& row, const VectorSequence& x, std::size_t m) {
  Vector value = zero_vector(m);
  for (const auto& [k, e] : row) {
    Vector y = e.apply(x.term(k));
    for (std::size_t i = 0; i < m; ++i) value[i] += y[i];
  }
  return value;
}

}  // namespace

std::size_t truncation_index(const Scalar& coeff, const Scalar& ratio, const Scalar& scale, const Scalar& tol) {
  if (coeff.is_zero() || scale.is_zero()) return 0;
  Scalar bound = coeff * scale / (Scalar(1) - ratio);
  for (std::size_t K = 0; K < kMaxTruncation; ++K) {
    if (certainly_le(bound, tol)) return K;
    bound *= ratio;
  }
  throw NotInDomain("geometric tail does not reach the tolerance within " + std::to_string(kMaxTruncation) +
                    " terms");
}

RowEvaluation row_apply(const OperatorMatrix& a, std::size_t n, const VectorSequence& x, const Scalar& tol) {
  if (x.dim() != a.d()) throw DimensionMismatch("sequence '" + x.label() + "' does not match '" + a.label() + "'");
  RowEvaluation out;
  out.n = n;
  out.trunc_error = Scalar(0);
  RowTail t = a.row_tail(n);
  switch (t.kind) {
    case RowTail::Kind::Finite:
      out.value = accumulate(a.finite_row(n), x, a.m());
      return out;
    case RowTail::Kind::Geometric: {
      auto bound = x.bound();
      if (!bound) throw NotInDomain(row_name(a, n) + " has a geometric tail but '" + x.label() + "' is unbounded");
      std::size_t K = truncation_index(t.coeff, t.ratio, *bound, tol);
      out.value = accumulate(a.row_prefix(n, K), x, a.m());
      out.trunc_error = geometric_tail(t.coeff, t.ratio, K) * *bound;
      return out;
    }
    case RowTail::Kind::ConstantFrom: {
      OperatorEntry c = a.entry(n, t.from);
      if (!c.is_zero()) {
        if (!x.decidable())
          throw NotInDomain(row_name(a, n) + " has a constant tail and '" + x.label() + "' is not decidable");
        if (!tail_annihilated(c, x, t.from)) throw NotInDomain(row_name(a, n) + " diverges on '" + x.label() + "'");
      }
      out.value = accumulate(a.row_prefix(n, t.from), x, a.m());
      return out;
    }
    case RowTail::Kind::Uncertified:
      break;
  }
  throw NotInDomain(row_name(a, n) + " has no certified tail");
}

std::vector<RowEvaluation> transform(const OperatorMatrix& a, const VectorSequence& x, std::size_t N,
                                     const Scalar& tol, Exec exec) {
  return kernels::transform_rows(a, x, N, tol, exec);
}

SampledSequence as_sampled(const std::vector<RowEvaluation>& rows, std::size_t dim) {
  SampledSequence s;
  s.dim = dim;
  bool exact = true;
  for (const auto& r : rows) {
    s.values.push_back(r.value);
    exact = exact && r.trunc_error.is_zero();
  }
  if (!exact)
    for (const auto& r : rows) s.errors.push_back(r.trunc_error);
  return s;
}

GroupNorm group_norm(const OperatorMatrix& a, std::size_t n, const SetDescriptor& e, const Scalar& tol,
                     const std::optional<Scalar>& threshold) {
  GroupNorm g{Scalar(0), Scalar(0)};
  RowTail t = a.row_tail(n);
  auto sum_over = [&](const SparseRow& row) {
    for (const auto& [k, entry] : row)
      if (e.contains(k)) g.value += entry_norm(entry);
  };
  switch (t.kind) {
    case RowTail::Kind::Finite:
      sum_over(a.finite_row(n));
      break;
    case RowTail::Kind::Geometric: {
      std::size_t K = truncation_index(t.coeff, t.ratio, Scalar(1), tol);
      sum_over(a.row_prefix(n, K));
      g.error = geometric_tail(t.coeff, t.ratio, K);
      break;
    }
    case RowTail::Kind::ConstantFrom: {
      OperatorEntry c = a.entry(n, t.from);
      SetDescriptor rest = e.without_prefix(t.from);
      if (!c.is_zero() && !rest.is_finite())
        throw DivergentGroupNorm(row_name(a, n) + " has infinite group norm over " + e.str());
      std::size_t limit = t.from;
      if (!c.is_zero() && rest.max_element()) limit = *rest.max_element() + 1;
      sum_over(a.row_prefix(n, std::max(limit, t.from)));
      break;
    }
    case RowTail::Kind::Uncertified:
      throw NotInDomain(row_name(a, n) + " has no certified tail");
  }
  if (threshold && certainly_lt(*threshold, g.value))
    throw DivergentGroupNorm(row_name(a, n) + ": group norm exceeds " + threshold->str());
  return g;
}

const char* to_string(NormVerdict v) {
  return v == NormVerdict::CertifiedFinite ? "CertifiedFinite" : "UnboundedAtHorizon";
}

MatrixNorm matrix_norm(const OperatorMatrix& a, std::size_t N, const Scalar& tol, Exec exec) {
  MatrixNorm out;
  out.verdict = a.norm_bound() ? NormVerdict::CertifiedFinite : NormVerdict::UnboundedAtHorizon;
  std::vector<Scalar> norms(N);
  try {
    SetDescriptor all = SetDescriptor::all();
    for_each_index(N, exec, [&](std::size_t n) { norms[n] = group_norm(a, n, all, tol).value; });
  } catch (const DivergentGroupNorm&) {
    out.verdict = NormVerdict::UnboundedAtHorizon;
    return out;
  }
  for (std::size_t n = 0; n < N; ++n) {
    if (!out.sup || certainly_lt(*out.sup, norms[n])) {
      out.sup = norms[n];
      out.argmax = n;
    }
  }
  return out;
}

Membership in_domain(const OperatorMatrix& a, const VectorSequence& x, const HorizonParams& h) {
  if (x.dim() != a.d()) throw DimensionMismatch("sequence '" + x.label() + "' does not match '" + a.label() + "'");
  switch (a.tail_kind()) {
    case RowTail::Kind::Finite:
      return Membership::Yes;
    case RowTail::Kind::Geometric:
      return x.bound() ? Membership::Yes : Membership::Unknown;
    default:
      break;
  }
  for (std::size_t n = 0; n < h.N; ++n) {
    RowTail t = a.row_tail(n);
    if (t.kind != RowTail::Kind::ConstantFrom) continue;
    OperatorEntry c = a.entry(n, t.from);
    if (!c.is_zero() && x.decidable() && !tail_annihilated(c, x, t.from)) return Membership::No;
  }
  return Membership::Unknown;
}

}  // namespace summa
