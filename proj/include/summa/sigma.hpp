#pragma once

#include <optional>
#include <string>
#include <vector>

#include "summa/horizon.hpp"
#include "summa/ideal.hpp"
#include "summa/matrix.hpp"
#include "summa/parallel.hpp"
#include "summa/regularity.hpp"
#include "summa/selection.hpp"
#include "summa/sequence.hpp"

namespace summa {

/// An injective map sigma on omega without periodic points, given in a form
/// whose injectivity is evident: n+1, a*n+b with a, b >= 1, or a permutation
/// of each block [iL, (i+1)L) carried into the next block.
class SigmaMap {
 public:
  enum class Kind { Shift, Affine, Blocks };

  static SigmaMap shift(std::string label = "sigma0");
  static SigmaMap affine(std::size_t a, std::size_t b, std::string label);
  static SigmaMap blocks(std::vector<std::size_t> perm, std::string label);

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  std::size_t a() const { return a_; }
  std::size_t b() const { return b_; }
  const std::vector<std::size_t>& perm() const { return perm_; }

  std::size_t operator()(std::size_t n) const;
  // sigma^{-1}(k), when k is in the range
  std::optional<std::size_t> preimage(std::size_t k) const;

  struct SampledCheck {
    bool injective = true;
    bool aperiodic = true;
    std::size_t samples = 0;
  };
  // Injectivity on [0, N) and sigma^{p+1}(n) != n for n, p < N.
  SampledCheck sampled_check(std::size_t N) const;

 private:
  Kind kind_ = Kind::Shift;
  std::string label_;
  std::size_t a_ = 1, b_ = 1;
  std::vector<std::size_t> perm_, inverse_;
};

// Row n: I/(n+1) at columns sigma(nu), ..., sigma(nu+n).
OperatorMatrix sigma_matrix(const SigmaMap& sigma, std::size_t nu, std::size_t d = 1);

// Row n: the mean of rows sigma(nu), ..., sigma(nu+n) of A.
OperatorMatrix compose_sigma(const OperatorMatrix& a, const SigmaMap& sigma, std::size_t nu);

struct SigmaLimit {
  Verdict verdict = Verdict::UnknownAtHorizon;
  std::optional<Vector> eta;
  bool exact = false;
  bool all_nu = false;  // the verdict covers every nu, not just nu < nu_max
  std::string route;    // "closed-form" or "uniform"
  UniformLimit uniform;
};

SigmaLimit sigma_limit(const VectorSequence& x, const SigmaMap& sigma, const IdealSpec& ideal,
                       const HorizonParams& h, Exec exec = default_exec());

struct AlmostRegularReport {
  std::vector<ConditionReport> k_route;       // K1..K3
  std::vector<ConditionReport> family_route;  // D1..D4 (or M1..M4) on the composed family
  bool routes_agree = false;
};

AlmostRegularReport check_almost_regular(const OperatorMatrix& a, const SigmaMap& sigma, const IdealSpec& I,
                                         const IdealSpec& J, const TargetOperator& target, const HorizonParams& h,
                                         const std::vector<SetDescriptor>& test_sets, Exec exec = default_exec());

}  // namespace summa
