#pragma once

#include <optional>
#include <vector>

#include "summa/horizon.hpp"
#include "summa/ideal.hpp"
#include "summa/matrix.hpp"
#include "summa/parallel.hpp"
#include "summa/sequence.hpp"
#include "summa/set_descriptor.hpp"

namespace summa {

struct RowEvaluation {
  std::size_t n = 0;
  Vector value;
  Scalar trunc_error;  // certified bound on the discarded tail, 1-norm
};

// Least K whose geometric tail bound coeff * ratio^K / (1 - ratio) * scale is at most tol.
std::size_t truncation_index(const Scalar& coeff, const Scalar& ratio, const Scalar& scale, const Scalar& tol);

RowEvaluation row_apply(const OperatorMatrix& a, std::size_t n, const VectorSequence& x, const Scalar& tol);
std::vector<RowEvaluation> transform(const OperatorMatrix& a, const VectorSequence& x, std::size_t N,
                                     const Scalar& tol, Exec exec = default_exec());
SampledSequence as_sampled(const std::vector<RowEvaluation>& rows, std::size_t dim);

// The true group norm lies in [value, value + error].
struct GroupNorm {
  Scalar value;
  Scalar error;
};

GroupNorm group_norm(const OperatorMatrix& a, std::size_t n, const SetDescriptor& e, const Scalar& tol,
                     const std::optional<Scalar>& threshold = std::nullopt);

enum class NormVerdict { CertifiedFinite, UnboundedAtHorizon };
const char* to_string(NormVerdict v);

struct MatrixNorm {
  std::optional<Scalar> sup;  // sup over n < N of the row norms; empty if a row norm diverges
  std::size_t argmax = 0;
  NormVerdict verdict = NormVerdict::UnboundedAtHorizon;
};

MatrixNorm matrix_norm(const OperatorMatrix& a, std::size_t N, const Scalar& tol, Exec exec = default_exec());

Membership in_domain(const OperatorMatrix& a, const VectorSequence& x, const HorizonParams& h);

}  // namespace summa
