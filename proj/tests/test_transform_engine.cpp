#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "summa/corpus.hpp"
#include "summa/errors.hpp"
#include "summa/kernels.hpp"
#include "summa/transform.hpp"

using namespace summa;

namespace {

const Scalar kTol = Scalar::ratio(1, 1024);

oracle::Periodic period3() { return {{}, {oracle::q(1), oracle::q(2), oracle::q(3)}}; }

VectorSequence period3_seq() { return VectorSequence::scalar_periodic("p3", {Scalar(1), Scalar(2), Scalar(3)}); }

}  // namespace

TEST_CASE("cesaro and euler transforms match brute-force sums") {
  auto x = period3_seq();
  auto o = period3();
  auto xf = [&](std::size_t k) { return o.at(k); };
  auto c = transform(matrices::cesaro(), x, 40, kTol, Exec::Serial);
  auto e = transform(matrices::euler(), x, 40, kTol, Exec::Serial);
  for (std::size_t n = 0; n < 40; ++n) {
    CHECK(c[n].value[0].exact() == oracle::apply_lower(oracle::cesaro_entry, xf, n));
    CHECK(e[n].value[0].exact() == oracle::apply_lower(oracle::euler_entry, xf, n));
    CHECK(c[n].trunc_error == Scalar(0));
  }
}

TEST_CASE("serial and parallel kernels agree exactly") {
  auto sets = std::vector<SetDescriptor>{SetDescriptor::finite({0}), SetDescriptor::progression(2, 1)};
  for (const auto& a : corpus::scalar_matrices()) {
    auto s = kernels::row_profiles(a, 48, sets, kTol, Exec::Serial);
    auto p = kernels::row_profiles(a, 48, sets, kTol, Exec::Parallel);
    REQUIRE(s.size() == p.size());
    for (std::size_t n = 0; n < s.size(); ++n) {
      CHECK(s[n].sum == p[n].sum);
      CHECK(s[n].total_abs == p[n].total_abs);
      CHECK(s[n].set_sums == p[n].set_sums);
      CHECK(s[n].error == p[n].error);
    }
    auto ts = transform(a, period3_seq(), 48, kTol, Exec::Serial);
    auto tp = transform(a, period3_seq(), 48, kTol, Exec::Parallel);
    for (std::size_t n = 0; n < ts.size(); ++n) CHECK(ts[n].value == tp[n].value);
  }
}

TEST_CASE("row profiles of finite rows equal brute-force row sums") {
  auto sets = std::vector<SetDescriptor>{SetDescriptor::finite({0})};
  auto profiles = kernels::row_profiles(matrices::euler(), 30, sets, kTol, Exec::Serial);
  for (std::size_t n = 0; n < 30; ++n) {
    CHECK(profiles[n].sum(0, 0).exact() == oracle::row_sum(oracle::euler_entry, n, n + 1));
    CHECK(profiles[n].total_abs.exact() == oracle::row_abs_sum(oracle::euler_entry, n, n + 1));
    CHECK(profiles[n].set_sums[0](0, 0).exact() == oracle::euler_entry(n, 0));
  }
}

TEST_CASE("geometric rows are truncated within the certified error") {
  auto g = matrices::geometric(Scalar::ratio(1, 2), Scalar::ratio(1, 2), "g");
  auto ones = VectorSequence::scalar_constant("ones", Scalar(1));
  RowEvaluation r = row_apply(g, 3, ones, kTol);
  // exact row sum of (1/2) (1/2)^k over k >= 0 is 1
  Scalar err = abs(r.value[0] - Scalar(1));
  CHECK(certainly_le(err, r.trunc_error));
  CHECK(certainly_le(r.trunc_error, kTol));
}

TEST_CASE("truncation index bounds the geometric remainder") {
  for (long den : {2L, 3L, 10L}) {
    Scalar ratio = Scalar::ratio(1, den);
    std::size_t K = truncation_index(Scalar(1), ratio, Scalar(1), kTol);
    // remainder sum_{k >= K} r^k = r^K / (1 - r)
    oracle::Q rk = 1;
    for (std::size_t i = 0; i < K; ++i) rk /= den;
    oracle::Q rem = rk / (1 - oracle::q(1, den));
    CHECK(rem <= kTol.exact());
  }
}

TEST_CASE("group norm matches the sum of entry operator norms") {
  OperatorEntry a(1, 2, {Scalar(1), Scalar(-3)}), b(1, 2, {Scalar::ratio(1, 2), Scalar(2)});
  auto m = matrices::dense_prefix("two", 2, 1, {{a, b}}, std::nullopt);
  GroupNorm all = group_norm(m, 0, SetDescriptor::all(), kTol);
  oracle::Q expected =
      oracle::l1_operator_norm({{1, -3}}) + oracle::l1_operator_norm({{oracle::q(1, 2), 2}});
  CHECK(all.value.exact() == expected);
  GroupNorm first = group_norm(m, 0, SetDescriptor::finite({0}), kTol);
  CHECK(first.value == Scalar(3));
}

TEST_CASE("group norm sandwich and additivity on random entries") {
  auto s = corpus::group_norm_sandwich(100, 42);
  CHECK(s.samples == 100);
  CHECK(s.passed());
}

TEST_CASE("matrix norm and domain membership") {
  HorizonParams h;
  h.N = 64;
  auto n = matrix_norm(matrices::cesaro(), 64, kTol, Exec::Serial);
  CHECK(n.verdict == NormVerdict::CertifiedFinite);
  CHECK(n.sup == Scalar(1));
  auto lo = matrix_norm(matrices::lower_ones(), 64, kTol, Exec::Serial);
  CHECK(lo.verdict == NormVerdict::UnboundedAtHorizon);
  CHECK(in_domain(matrices::cesaro(), period3_seq(), h) == Membership::Yes);
}

TEST_CASE("uncertified tails are refused") {
  auto u = matrices::uncertified(matrices::cesaro(), "u");
  CHECK_THROWS_AS(row_apply(u, 2, period3_seq(), kTol), NotInDomain);
  CHECK_THROWS_AS(group_norm(u, 2, SetDescriptor::all(), kTol), NotInDomain);
}

TEST_CASE("all-ones rows diverge on infinite sets") {
  auto ones = matrices::all_ones();
  CHECK_THROWS_AS(group_norm(ones, 0, SetDescriptor::progression(2, 0), kTol), DivergentGroupNorm);
  CHECK(group_norm(ones, 0, SetDescriptor::finite({1, 2, 5}), kTol).value == Scalar(3));
}

TEST_CASE("sampled transforms carry per-row errors") {
  auto rows = transform(matrices::cesaro(), period3_seq(), 10, kTol, Exec::Serial);
  SampledSequence s = as_sampled(rows, 1);
  CHECK(s.size() == 10);
  CHECK(s.error(3) == Scalar(0));
  CHECK(s.values[1][0] == Scalar::ratio(3, 2));
}
