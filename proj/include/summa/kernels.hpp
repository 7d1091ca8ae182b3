#pragma once

#include <vector>

#include "summa/matrix.hpp"
#include "summa/parallel.hpp"
#include "summa/sequence.hpp"
#include "summa/set_descriptor.hpp"
#include "summa/transform.hpp"

namespace summa {

/// Per-row series used by the condition checkers. Each coefficient of sum,
/// abs_sum and the set sums, and norm itself, is within `error` of the full
/// series; total_abs is within d * error.
struct RowProfile {
  OperatorEntry sum;
  OperatorEntry abs_sum;
  Scalar norm;
  Scalar total_abs;
  std::vector<OperatorEntry> set_sums;
  std::vector<OperatorEntry> set_abs_sums;
  Scalar error;
};

namespace kernels {

// Rows n < N of A x. Serial and parallel runs give identical results.
std::vector<RowEvaluation> transform_rows(const OperatorMatrix& a, const VectorSequence& x, std::size_t N,
                                          const Scalar& tol, Exec exec);

RowProfile row_profile(const OperatorMatrix& a, std::size_t n, const std::vector<SetDescriptor>& sets,
                       const Scalar& tol);
std::vector<RowProfile> row_profiles(const OperatorMatrix& a, std::size_t N, const std::vector<SetDescriptor>& sets,
                                     const Scalar& tol, Exec exec);

}  // namespace kernels

}  // namespace summa
