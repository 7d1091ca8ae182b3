#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "summa/horizon.hpp"
#include "summa/ideal.hpp"
#include "summa/matrix.hpp"
#include "summa/parallel.hpp"
#include "summa/set_descriptor.hpp"

namespace summa {

/// A concrete index where a condition is violated. `quantity` names the
/// series that was evaluated so the value can be recomputed from the matrix.
struct Witness {
  std::string quantity;
  std::size_t n = 0;
  std::size_t nu = 0;
  std::optional<SetDescriptor> set;
  std::optional<std::pair<std::size_t, std::size_t>> ij;
  Scalar value;
};

struct ConditionReport {
  std::string condition;
  Verdict verdict = Verdict::UnknownAtHorizon;
  std::optional<Witness> witness;
  Scalar margin;
  Scalar tolerance;
  std::optional<std::size_t> depth;  // dual-base index that certified a limit
  std::string scope;
};

struct TargetOperator {
  OperatorEntry t;
};

bool all_hold(const std::vector<ConditionReport>& reports);
const ConditionReport& find_condition(const std::vector<ConditionReport>& reports, const std::string& label);

// Built-in finite sets and progressions certified to lie in I, followed by
// the user sets. User sets outside I are rejected.
std::vector<SetDescriptor> test_battery(const IdealSpec& ideal, const HorizonParams& h,
                                        const std::vector<SetDescriptor>& user);

std::vector<ConditionReport> check_regular_family(const MatrixFamily& family, const IdealSpec& I, const IdealSpec& J,
                                                  const TargetOperator& target, const HorizonParams& h,
                                                  const std::vector<SetDescriptor>& test_sets,
                                                  Exec exec = default_exec());
std::vector<ConditionReport> check_regular_singleton(const OperatorMatrix& a, const IdealSpec& I, const IdealSpec& J,
                                                     const TargetOperator& target, const HorizonParams& h,
                                                     const std::vector<SetDescriptor>& test_sets,
                                                     Exec exec = default_exec());
std::vector<ConditionReport> check_maps_to_zero(const MatrixFamily& family, const IdealSpec& J,
                                                const HorizonParams& h, Exec exec = default_exec());
std::vector<ConditionReport> check_core_inclusion(const OperatorMatrix& a, const IdealSpec& I, const HorizonParams& h,
                                                  const std::vector<SetDescriptor>& test_sets,
                                                  Exec exec = default_exec());
std::vector<ConditionReport> check_uniform_core_inclusion(const MatrixFamily& family, const IdealSpec& I,
                                                          const HorizonParams& h,
                                                          const std::vector<SetDescriptor>& test_sets,
                                                          Exec exec = default_exec());

/// Worst case over members and coefficients of a nonnegative series, per row:
/// upper and lower bound it, nu and ij locate the maximizer of lower.
struct DeviationSeries {
  std::vector<Scalar> upper, lower;
  std::vector<std::size_t> nu;
  std::vector<std::pair<std::size_t, std::size_t>> ij;
};

// Report for "the series tends to 0 along J".
ConditionReport null_limit_report(const std::string& label, const DeviationSeries& dev, const IdealSpec& J,
                                  const HorizonParams& h, const std::string& quantity,
                                  const std::optional<SetDescriptor>& set, bool coefficientwise);
// First failure wins; Holds only when every part holds.
ConditionReport combine_set_reports(const std::string& label, const std::vector<ConditionReport>& parts,
                                    const std::vector<SetDescriptor>& sets);
// Each member has bounded row norms: a certified bound, or growth at horizon.
ConditionReport check_bounded_rows(const MatrixFamily& family, const HorizonParams& h, const std::string& label,
                                   Exec exec = default_exec());

// Recomputes a witness value directly from the matrix entries.
Scalar replay_witness(const MatrixFamily& family, const Witness& w, const std::optional<TargetOperator>& target,
                      const Scalar& tol);

}  // namespace summa
