#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "summa/horizon.hpp"
#include "summa/ideal.hpp"
#include "summa/matrix.hpp"
#include "summa/parallel.hpp"
#include "summa/sequence.hpp"

namespace summa {

/// A map n -> nu < arity choosing which family member supplies row n of a
/// row-selected matrix B.
class SelectionSeq {
 public:
  enum class Kind { EventuallyPeriodic, Explicit, Adversarial, Split };

  static SelectionSeq eventually_periodic(std::size_t arity, std::vector<std::size_t> prefix,
                                          std::vector<std::size_t> period);
  static SelectionSeq constant(std::size_t arity, std::size_t nu) { return eventually_periodic(arity, {}, {nu}); }
  static SelectionSeq explicit_prefix(std::size_t arity, std::vector<std::size_t> prefix, std::size_t default_nu);
  // table gives rows n < table.size(); beyond(n) is consulted past the table.
  static SelectionSeq adversarial(std::size_t arity, std::vector<std::size_t> table,
                                  std::function<std::size_t(std::size_t)> beyond, std::string basis);
  // a on one color class of the ideal's split, b on the other.
  static SelectionSeq split(std::size_t arity, std::size_t a, std::size_t b, const IdealSpec& ideal);

  Kind kind() const { return kind_; }
  std::size_t arity() const { return arity_; }
  std::size_t operator()(std::size_t n) const;
  std::vector<std::size_t> first(std::size_t count) const;

  const std::vector<std::size_t>& prefix() const { return prefix_; }
  const std::vector<std::size_t>& period() const { return period_; }
  std::size_t default_nu() const { return default_; }
  const std::string& basis() const { return basis_; }
  std::string str() const;

 private:
  Kind kind_ = Kind::EventuallyPeriodic;
  std::size_t arity_ = 1;
  std::vector<std::size_t> prefix_;
  std::vector<std::size_t> period_;
  std::size_t default_ = 0;
  std::string basis_;
  std::shared_ptr<const std::function<std::size_t(std::size_t)>> beyond_;
};

OperatorMatrix select_matrix(const MatrixFamily& family, const SelectionSeq& s);

struct EnumParams {
  std::size_t prefix = 1;
  std::size_t period = 2;
  std::size_t budget = 4096;
};

// Eventually periodic selections with prefix <= P and period <= Q, one per
// class of words with the same tail up to rotation of the period. The order
// is deterministic. Throws BudgetExceeded when the raw word count is too big.
std::vector<SelectionSeq> enumerate_selections(std::size_t arity, const EnumParams& params);

struct UniformLimit {
  Verdict verdict = Verdict::UnknownAtHorizon;
  std::optional<Vector> eta;
  std::optional<std::size_t> t;
  bool exact = false;
  Scalar radius;                          // max deviation on the deciding window, or the witness value
  std::optional<std::size_t> witness_n;   // row where a member stays away from eta
  std::optional<std::size_t> witness_nu;  // that member; paired with member 0
  std::string note;
};

UniformLimit uniform_limit(const MatrixFamily& family, const VectorSequence& x, const IdealSpec& ideal,
                           const HorizonParams& h, Exec exec = default_exec());

struct EquivalenceReport {
  Verdict item_i = Verdict::UnknownAtHorizon;
  Verdict item_ii = Verdict::UnknownAtHorizon;
  Verdict item_iii = Verdict::UnknownAtHorizon;
  std::optional<Vector> eta1;
  std::optional<Vector> eta2;
  std::optional<SelectionSeq> witness;
  std::string witness_item;  // "ii" or "iii"
  std::size_t selections_tested = 0;
  bool counterexample = false;
  std::string note;
};

EquivalenceReport test_theorem_equivalence(const MatrixFamily& family, const VectorSequence& x,
                                           const IdealSpec& ideal, const HorizonParams& h,
                                           const EnumParams& params, Exec exec = default_exec());

// Row n picks the member with the largest A_n x (smallest index on ties).
SelectionSeq adversarial_limsup_selection(const MatrixFamily& family, const VectorSequence& x,
                                          const HorizonParams& h, Exec exec = default_exec());

struct UniformLimsupReport {
  Scalar lhs;
  Scalar rhs_lower_bound;
  Scalar adversarial_rhs;
  Verdict verdict = Verdict::UnknownAtHorizon;
  std::size_t selections_tested = 0;
  std::optional<SelectionSeq> adversarial;
  std::optional<SelectionSeq> worst;  // enumerated selection attaining rhs_lower_bound
};

UniformLimsupReport verify_uniform_limsup_identity(const MatrixFamily& family, const VectorSequence& x,
                                                   const IdealSpec& ideal, const HorizonParams& h,
                                                   const EnumParams& params, Exec exec = default_exec());

}  // namespace summa
