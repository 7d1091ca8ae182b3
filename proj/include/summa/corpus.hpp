#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "summa/ideal.hpp"
#include "summa/matrix.hpp"
#include "summa/sequence.hpp"
#include "summa/set_descriptor.hpp"
#include "summa/sigma.hpp"

namespace summa::corpus {

/// Built-in instances shared by the tests, the acceptance run and the bench.

// Scalar matrices with certified tails (every row summable).
std::vector<OperatorMatrix> scalar_matrices();

// Bounded scalar sequences, decidable and formula-backed.
std::vector<VectorSequence> bounded_sequences();

// Bounded sequences whose ordinary limit is known, paired with that limit.
struct Convergent {
  VectorSequence x;
  Scalar limit;
};
std::vector<Convergent> convergent_sequences();

// Ideals with a dual base, plus density zero.
std::vector<IdealSpec> countably_generated_ideals();
std::vector<IdealSpec> all_ideals();

struct NamedFamily {
  std::string name;
  MatrixFamily family;
};
// Scalar families with a certified uniform norm bound.
std::vector<NamedFamily> scalar_families();

struct EquivalenceCase {
  std::string name;
  MatrixFamily family;
  VectorSequence x;
  IdealSpec ideal;
};
std::vector<EquivalenceCase> equivalence_cases();

// Even/odd unit masses: row n of member 0 is e_{2n}, of member 1 is e_{2n+1}.
MatrixFamily even_odd_family();
VectorSequence alternating();  // 1, 0, 1, 0, ...

std::vector<SigmaMap> sigma_maps();

struct SandwichSummary {
  std::size_t samples = 0;
  std::size_t sandwich_ok = 0;
  std::size_t additive_ok = 0;
  bool passed() const { return sandwich_ok == samples && additive_ok == samples; }
};
// Random m x d entries (d, m <= 3) in a one-row matrix; checks
// (1/d) sum |a| <= group norm <= sum |a| over a random E, and additivity
// over E and its complement.
SandwichSummary group_norm_sandwich(std::size_t samples, std::uint64_t seed);

}  // namespace summa::corpus
