#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "summa/scalar.hpp"

namespace summa {

/// Finite probe of an infinite statement: rows n < N, tolerance eps, dual-base
/// depth up to tmax, windows of at least min_window indices, and nu < nu_max
/// for sigma-mean families.
struct HorizonParams {
  std::size_t N = 256;
  Scalar eps = Scalar(Rational(1, 16));
  std::optional<std::size_t> tmax;        // defaults to N
  std::optional<std::size_t> min_window;  // defaults to max(1, N/16)
  std::size_t nu_max = 8;

  std::size_t depth_limit() const { return tmax.value_or(N); }
  std::size_t window_floor() const;
  // tolerance for discarded series tails
  Scalar truncation_tol() const { return eps / Scalar(64); }
  void validate() const;
};

enum class Verdict { Holds, FailsWithWitness, UnknownAtHorizon };
const char* to_string(Verdict v);
Verdict parse_verdict(const std::string& text);

enum class Membership { Yes, No, Unknown };
const char* to_string(Membership m);

}  // namespace summa
