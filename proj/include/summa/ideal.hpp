#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "summa/horizon.hpp"
#include "summa/parallel.hpp"
#include "summa/sequence.hpp"
#include "summa/set_descriptor.hpp"

namespace summa {

/// An ideal on omega containing Fin and not containing omega.
///
/// Countably generated ideals are stored through a decreasing base
/// S_0 >= S_1 >= ... of the dual filter, normalized so that min S_t >= t;
/// then E belongs to the ideal iff E misses some S_t up to a finite set.
class IdealSpec {
 public:
  enum class Kind { Fin, CountablyGenerated, DensityZero };

  static IdealSpec fin(std::string label = "fin");
  static IdealSpec density_zero(std::string label = "density-zero");
  // S_t = {n : 2^t divides n+1}; a copy of the ideal of sets meeting only
  // finitely many columns, read through the dyadic pairing.
  static IdealSpec dyadic(std::string label = "dyadic");
  // Dual base given by S_0..S_L; S_t is the intersection of S_0..S_min(t,L)
  // with [0, t) removed.
  static IdealSpec from_dual_sets(std::string label, std::vector<SetDescriptor> sets);
  // Ideal generated by Fin and g: dual base (omega minus g) minus [0, t).
  static IdealSpec generated_by(std::string label, const SetDescriptor& g);

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  bool has_dual_base() const { return kind_ != Kind::DensityZero; }
  // "tails", "dyadic", or empty for an explicit list
  const std::string& generator() const { return generator_; }
  const std::vector<SetDescriptor>& dual_sets() const { return sets_; }

  SetDescriptor dual_set(std::size_t t) const;
  // S_t intersected with [0, N), ascending
  std::vector<std::size_t> window(std::size_t t, std::size_t N) const;
  // index t* with: E in I iff E meets S_{t*} in a finite set
  std::size_t stability_index(const SetDescriptor& e) const;
  Membership contains(const SetDescriptor& e, std::size_t tmax) const;
  // A two-coloring of omega whose color classes both lie outside the ideal.
  bool split(std::size_t n) const;

 private:
  void require_dual_base(const char* what) const;

  Kind kind_ = Kind::Fin;
  std::string label_;
  std::string generator_;
  std::vector<SetDescriptor> sets_;  // normalized prefix S_0..S_L for lists
};

Membership ideal_contains(const IdealSpec& ideal, const SetDescriptor& e, const HorizonParams& h);

// Deepest dual-base index whose window S_t ∩ [0,N) still has min_window points.
std::size_t effective_depth(const IdealSpec& ideal, const HorizonParams& h);

/// First N terms of a sequence with a per-term certified error (1-norm) on
/// each value; an empty error list means the values are exact.
struct SampledSequence {
  std::vector<Vector> values;
  std::vector<Scalar> errors;
  std::size_t dim = 1;

  std::size_t size() const { return values.size(); }
  Scalar error(std::size_t n) const { return errors.empty() ? Scalar(0) : errors[n]; }
};

SampledSequence sample(const VectorSequence& x, std::size_t N);

struct NullLimitDecision {
  Verdict verdict = Verdict::UnknownAtHorizon;
  std::optional<std::size_t> t;  // depth that certified Holds
  std::size_t n = 0;             // index attaining the reported value
  Scalar value;                  // max on the decisive window, or the witness value
  bool exact_zero = false;       // every value on the decisive window is exactly 0
};

// Decides whether D_n -> 0 along the ideal at horizon. upper[n] bounds D_n
// from above and lower[n] from below.
NullLimitDecision decide_null_limit(const std::vector<Scalar>& upper, const std::vector<Scalar>& lower,
                                    const IdealSpec& ideal, const HorizonParams& h);

struct IdealLimit {
  std::optional<Vector> eta;
  std::optional<std::size_t> t;
  bool exact = false;
  std::optional<std::pair<Vector, Vector>> separating;
  Scalar radius;  // max deviation from eta on the witnessing window
};

IdealLimit ideal_lim(const VectorSequence& x, const IdealSpec& ideal, const HorizonParams& h);
IdealLimit ideal_lim(const SampledSequence& x, const IdealSpec& ideal, const HorizonParams& h);

struct ClusterCover {
  std::vector<std::pair<Scalar, Scalar>> intervals;  // ascending closed intervals
  bool exact = false;
};

ClusterCover cluster_points(const VectorSequence& x, const IdealSpec& ideal, const HorizonParams& h);
ClusterCover cluster_points(const SampledSequence& x, const IdealSpec& ideal, const HorizonParams& h,
                            Exec exec = default_exec());

Scalar ideal_limsup(const VectorSequence& x, const IdealSpec& ideal, const HorizonParams& h);
Scalar ideal_liminf(const VectorSequence& x, const IdealSpec& ideal, const HorizonParams& h);
Scalar ideal_limsup(const SampledSequence& x, const IdealSpec& ideal, const HorizonParams& h);
Scalar ideal_liminf(const SampledSequence& x, const IdealSpec& ideal, const HorizonParams& h);
std::pair<Scalar, Scalar> core(const VectorSequence& x, const IdealSpec& ideal, const HorizonParams& h);

}  // namespace summa
