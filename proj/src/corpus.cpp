#include "summa/corpus.hpp"

#include <random>

#include "summa/transform.hpp"

namespace summa::corpus {

namespace {

Scalar q(long p, long r) { return Scalar::ratio(p, r); }

}  // namespace

MatrixFamily even_odd_family() {
  return MatrixFamily({matrices::unit_mass(2, 0, "even-rows"), matrices::unit_mass(2, 1, "odd-rows")});
}

VectorSequence alternating() { return VectorSequence::scalar_periodic("alternating", {Scalar(1), Scalar(0)}); }

std::vector<OperatorMatrix> scalar_matrices() {
  return {
      matrices::cesaro(),
      matrices::identity(),
      matrices::euler(),
      matrices::zero(),
      matrices::signed_cesaro(),
      matrices::lower_ones(),
      matrices::column(0, "column-0"),
      matrices::diagonal_decay(),
      matrices::alternating_diagonal(),
      matrices::unit_mass(2, 0, "even-rows"),
      matrices::unit_mass(1, 1, "shift"),
      matrices::geometric(q(1, 2), q(1, 2), "geometric-half"),
      matrices::scaled(matrices::identity(), Scalar(2), "row-sum-2"),
      matrices::scaled(matrices::cesaro(), Scalar(-1), "negated-cesaro"),
      matrices::delayed(matrices::cesaro(), 3, "cesaro-delayed-3"),
      matrices::banded("band-average", 1, 1, 1, 0, 1,
                       {{{0, -1}, OperatorEntry::scalar(q(1, 2))}, {{0, 0}, OperatorEntry::scalar(q(1, 2))}}),
  };
}

std::vector<VectorSequence> bounded_sequences() {
  std::vector<VectorSequence> out;
  out.push_back(alternating());
  out.push_back(VectorSequence::scalar_constant("ones", Scalar(1)));
  out.push_back(VectorSequence::scalar_constant("settles-to-zero", Scalar(0), {Scalar(3), Scalar(-2), Scalar(1)}));
  out.push_back(VectorSequence::scalar_constant("settles-to-half", q(1, 2), {Scalar(0)}));
  out.push_back(VectorSequence::scalar_periodic("period-3", {Scalar(1), Scalar(2), Scalar(3)}));
  out.push_back(VectorSequence::scalar_periodic("signs", {Scalar(1), Scalar(-1)}));
  out.push_back(VectorSequence::scalar_periodic("one-in-three", {Scalar(1), Scalar(0), Scalar(0)}, {Scalar(5)}));
  out.push_back(VectorSequence::scalar_constant("spike-at-0", Scalar(0), {Scalar(1)}));
  out.push_back(VectorSequence::formula(
      "harmonic", 1, [](std::size_t k) { return Vector{Scalar::ratio(1, static_cast<long>(k + 1))}; }, Scalar(1)));
  out.push_back(VectorSequence::formula(
      "damped-signs", 1,
      [](std::size_t k) { return Vector{Scalar::ratio(k % 2 ? -1 : 1, static_cast<long>(k + 1))}; }, Scalar(1)));
  return out;
}

std::vector<Convergent> convergent_sequences() {
  std::vector<Convergent> out;
  out.push_back({VectorSequence::scalar_constant("ones", Scalar(1)), Scalar(1)});
  out.push_back({VectorSequence::scalar_constant("settles-to-half", q(1, 2), {Scalar(0)}), q(1, 2)});
  out.push_back({VectorSequence::scalar_constant("minus-two-thirds", q(-2, 3)), q(-2, 3)});
  out.push_back({VectorSequence::scalar_constant("spike-at-0", Scalar(0), {Scalar(1)}), Scalar(0)});
  out.push_back({VectorSequence::formula(
                     "harmonic", 1,
                     [](std::size_t k) { return Vector{Scalar::ratio(1, static_cast<long>(k + 1))}; }, Scalar(1)),
                 Scalar(0)});
  return out;
}

std::vector<IdealSpec> countably_generated_ideals() {
  return {IdealSpec::fin(), IdealSpec::dyadic(), IdealSpec::generated_by("evens", SetDescriptor::progression(2, 0)),
          IdealSpec::from_dual_sets("thirds", {SetDescriptor::progression(3, 0).unite(SetDescriptor::progression(3, 1)),
                                               SetDescriptor::progression(3, 0)})};
}

std::vector<IdealSpec> all_ideals() {
  auto out = countably_generated_ideals();
  out.push_back(IdealSpec::density_zero());
  return out;
}

std::vector<NamedFamily> scalar_families() {
  using namespace matrices;
  std::vector<NamedFamily> out;
  out.push_back({"cesaro", MatrixFamily({cesaro()})});
  out.push_back({"even-odd", even_odd_family()});
  out.push_back({"cesaro-and-negated", MatrixFamily({cesaro(), scaled(cesaro(), Scalar(-1), "negated-cesaro")})});
  out.push_back({"cesaro-and-zero", MatrixFamily({cesaro(), zero()})});
  out.push_back({"identity-and-cesaro", MatrixFamily({identity(), cesaro()})});
  out.push_back({"euler-and-cesaro", MatrixFamily({euler(), cesaro()})});
  out.push_back({"identity-and-shift", MatrixFamily({identity(), unit_mass(1, 1, "shift")})});
  out.push_back({"delayed-cesaro",
                 MatrixFamily({cesaro(), delayed(cesaro(), 1, "cesaro-delayed-1"), delayed(cesaro(), 2, "cesaro-delayed-2")})});
  out.push_back({"thirds", MatrixFamily({unit_mass(3, 0, "rows-3n"), unit_mass(3, 1, "rows-3n+1"),
                                         unit_mass(3, 2, "rows-3n+2")})});
  out.push_back({"signed-and-plain", MatrixFamily({signed_cesaro(), cesaro()})});
  out.push_back({"geometric-and-identity", MatrixFamily({geometric(q(1, 2), q(1, 2), "geometric-half"), identity()})});
  std::vector<OperatorMatrix> means;
  for (std::size_t nu = 0; nu < 3; ++nu) means.push_back(sigma_matrix(SigmaMap::shift(), nu));
  out.push_back({"shift-means", MatrixFamily(means)});
  return out;
}

std::vector<EquivalenceCase> equivalence_cases() {
  using namespace matrices;
  std::vector<NamedFamily> fams = {
      {"cesaro", MatrixFamily({cesaro()})},
      {"even-odd", even_odd_family()},
      {"cesaro-and-negated", MatrixFamily({cesaro(), scaled(cesaro(), Scalar(-1), "negated-cesaro")})},
      {"cesaro-and-zero", MatrixFamily({cesaro(), zero()})},
      {"identity-and-cesaro", MatrixFamily({identity(), cesaro()})},
      {"euler-and-cesaro", MatrixFamily({euler(), cesaro()})},
      {"identity-and-shift", MatrixFamily({identity(), unit_mass(1, 1, "shift")})},
  };
  std::vector<VectorSequence> xs = {alternating(), VectorSequence::scalar_constant("ones", Scalar(1)),
                                    VectorSequence::scalar_constant("settles-to-zero", Scalar(0), {Scalar(1)})};
  std::vector<EquivalenceCase> out;
  IdealSpec fin = IdealSpec::fin();
  for (const auto& f : fams)
    for (const auto& x : xs) out.push_back({f.name + "/" + x.label() + "/fin", f.family, x, fin});
  auto ideals = countably_generated_ideals();
  for (std::size_t i = 1; i < ideals.size(); ++i) {
    out.push_back({"even-odd/alternating/" + ideals[i].label(), even_odd_family(), alternating(), ideals[i]});
    out.push_back({"identity-and-shift/ones/" + ideals[i].label(), fams[6].family, xs[1], ideals[i]});
  }
  return out;
}

std::vector<SigmaMap> sigma_maps() {
  return {SigmaMap::shift(), SigmaMap::affine(2, 1, "affine-2n+1"), SigmaMap::blocks({1, 0, 2}, "blocks-3")};
}

SandwichSummary group_norm_sandwich(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 3), num(-5, 5), den(1, 4), cols(1, 6), bit(0, 1);
  SandwichSummary s;
  s.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    std::size_t d = dim(rng), m = dim(rng), K = cols(rng);
    std::vector<OperatorEntry> row;
    for (std::size_t k = 0; k < K; ++k) {
      std::vector<Scalar> data;
      for (std::size_t c = 0; c < m * d; ++c) data.push_back(Scalar::ratio(num(rng), den(rng)));
      row.emplace_back(m, d, std::move(data));
    }
    std::vector<std::size_t> in, out;
    for (std::size_t k = 0; k < K; ++k) (bit(rng) ? in : out).push_back(k);
    OperatorMatrix a = matrices::dense_prefix("random-row", d, m, {row}, std::nullopt);
    SetDescriptor e = SetDescriptor::finite(in), rest = SetDescriptor::finite(out);
    Scalar tol(0);
    Scalar norm_e = group_norm(a, 0, e, tol).value;
    Scalar norm_rest = group_norm(a, 0, rest, tol).value;
    Scalar norm_all = group_norm(a, 0, SetDescriptor::all(), tol).value;
    Scalar abs_e(0);
    for (std::size_t k : in) abs_e += entry_abs_sum(row[k]);
    Scalar lower = abs_e / Scalar(static_cast<long>(d));
    if (certainly_le(lower, norm_e) && certainly_le(norm_e, abs_e)) ++s.sandwich_ok;
    if (norm_e + norm_rest == norm_all) ++s.additive_ok;
  }
  return s;
}

}  // namespace summa::corpus
