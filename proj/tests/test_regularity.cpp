#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "summa/corpus.hpp"
#include "summa/errors.hpp"
#include "summa/regularity.hpp"
#include "summa/sigma.hpp"

using namespace summa;

namespace {

HorizonParams horizon(std::size_t N) {
  HorizonParams h;
  h.N = N;
  return h;
}

std::vector<ConditionReport> classic(const OperatorMatrix& a, std::vector<SetDescriptor> sets = {}) {
  IdealSpec fin = IdealSpec::fin();
  return check_regular_singleton(a, fin, fin, TargetOperator{OperatorEntry::scalar(Scalar(1))}, horizon(256), sets,
                                 Exec::Serial);
}

Verdict verdict_of(const std::vector<ConditionReport>& rs, const std::string& c) {
  return find_condition(rs, c).verdict;
}

}  // namespace

TEST_CASE("regular methods pass all four conditions") {
  for (auto a : {matrices::cesaro(), matrices::identity(), matrices::euler()}) {
    auto rs = classic(a);
    CHECK(rs.size() == 4);
    CHECK(all_hold(rs));
  }
}

TEST_CASE("row sum 2 fails the row-sum condition with a replayable witness") {
  auto a = matrices::scaled(matrices::identity(), Scalar(2), "row-sum-2");
  auto rs = classic(a);
  CHECK(verdict_of(rs, "M1") == Verdict::Holds);
  CHECK(verdict_of(rs, "M3") == Verdict::FailsWithWitness);
  const Witness& w = *find_condition(rs, "M3").witness;
  CHECK(w.quantity == "row-sum-deviation");
  CHECK(w.value == Scalar(1));  // |2 - 1|
  Scalar again = replay_witness(MatrixFamily({a}), w, TargetOperator{OperatorEntry::scalar(Scalar(1))},
                                horizon(256).truncation_tol());
  CHECK(again == w.value);
}

TEST_CASE("the first column must vanish") {
  auto delta = matrices::column(0, "delta-k0");
  auto rs = classic(delta, {SetDescriptor::finite({0})});
  CHECK(verdict_of(rs, "M4") == Verdict::FailsWithWitness);
  const Witness& w = *find_condition(rs, "M4").witness;
  REQUIRE(w.set.has_value());
  CHECK(w.set->contains(0));
  // brute force: row n restricted to {0} sums to 1
  CHECK(w.value == Scalar(1));
}

TEST_CASE("unbounded rows fail the norm condition") {
  auto rs = classic(matrices::lower_ones());
  CHECK(verdict_of(rs, "M1") == Verdict::FailsWithWitness);
  const Witness& w = *find_condition(rs, "M1").witness;
  CHECK(w.quantity == "row-norm");
  CHECK(w.value.exact() == oracle::row_abs_sum([](std::size_t n, std::size_t k) { return oracle::Q(k <= n); },
                                               w.n, w.n + 1));
}

TEST_CASE("test sets outside the ideal are rejected up front") {
  auto a = matrices::cesaro();
  IdealSpec fin = IdealSpec::fin();
  CHECK_THROWS_AS(check_regular_singleton(a, fin, fin, TargetOperator{OperatorEntry::scalar(Scalar(1))},
                                          horizon(64), {SetDescriptor::progression(2, 0)}, Exec::Serial),
                  PreconditionError);
}

TEST_CASE("the test battery holds the built-in finite sets") {
  auto sets = test_battery(IdealSpec::fin(), horizon(64), {});
  REQUIRE(sets.size() >= 2);
  CHECK(sets[0] == SetDescriptor::finite({0}));
  CHECK(sets[1] == SetDescriptor::finite({1}));
  auto evens = IdealSpec::generated_by("evens", SetDescriptor::progression(2, 0));
  auto more = test_battery(evens, horizon(64), {SetDescriptor::progression(2, 0)});
  CHECK(more.size() > 2);
}

TEST_CASE("maps-to-zero holds for the zero matrix and fails for the identity") {
  IdealSpec fin = IdealSpec::fin();
  auto z = check_maps_to_zero(MatrixFamily({matrices::zero()}), fin, horizon(64), Exec::Serial);
  CHECK(all_hold(z));
  auto i = check_maps_to_zero(MatrixFamily({matrices::identity()}), fin, horizon(64), Exec::Serial);
  CHECK(verdict_of(i, "D3#") == Verdict::FailsWithWitness);
  CHECK(find_condition(i, "D3#").witness->value == Scalar(1));
}

TEST_CASE("core inclusion: positive regular methods pass, signed cesaro fails C2") {
  IdealSpec fin = IdealSpec::fin();
  auto c = check_core_inclusion(matrices::cesaro(), fin, horizon(256), {}, Exec::Serial);
  CHECK(all_hold(c));
  auto s = check_core_inclusion(matrices::signed_cesaro(), fin, horizon(256), {}, Exec::Serial);
  CHECK(verdict_of(s, "C2") == Verdict::FailsWithWitness);
  CHECK(find_condition(s, "C2").witness.has_value());
}

TEST_CASE("core inclusion needs a bounded scalar matrix") {
  CHECK_THROWS_AS(check_core_inclusion(matrices::lower_ones(), IdealSpec::fin(), horizon(64), {}, Exec::Serial),
                  PreconditionError);
}

TEST_CASE("family regularity takes the worst member") {
  IdealSpec fin = IdealSpec::fin();
  MatrixFamily f({matrices::cesaro(), matrices::scaled(matrices::identity(), Scalar(2), "twice")});
  auto rs = check_regular_family(f, fin, fin, TargetOperator{OperatorEntry::scalar(Scalar(1))}, horizon(128), {},
                                 Exec::Serial);
  CHECK(verdict_of(rs, "M3") == Verdict::FailsWithWitness);
  CHECK(find_condition(rs, "M3").witness->nu == 1);
}

TEST_CASE("serial and parallel checkers report the same thing") {
  IdealSpec fin = IdealSpec::fin();
  for (const auto& nf : corpus::scalar_families()) {
    auto s = check_regular_family(nf.family, fin, fin, TargetOperator{OperatorEntry::scalar(Scalar(1))},
                                  horizon(64), {}, Exec::Serial);
    auto p = check_regular_family(nf.family, fin, fin, TargetOperator{OperatorEntry::scalar(Scalar(1))},
                                  horizon(64), {}, Exec::Parallel);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i].verdict == p[i].verdict);
      CHECK(s[i].margin == p[i].margin);
    }
  }
}

TEST_CASE("every failure witness in the scalar corpus replays") {
  for (const auto& a : corpus::scalar_matrices()) {
    auto rs = classic(a);
    for (const auto& r : rs) {
      if (!r.witness) continue;
      Scalar v = replay_witness(MatrixFamily({a}), *r.witness, TargetOperator{OperatorEntry::scalar(Scalar(1))},
                                horizon(256).truncation_tol());
      CHECK_MESSAGE(v == r.witness->value, a.label() << " " << r.condition);
    }
  }
}

TEST_CASE("identity fails M4 on the evens test set once evens lie in I") {
  IdealSpec evens = IdealSpec::generated_by("evens", SetDescriptor::progression(2, 0));
  IdealSpec fin = IdealSpec::fin();
  auto rs = check_regular_singleton(matrices::identity(), evens, fin, TargetOperator{OperatorEntry::scalar(Scalar(1))},
                                    horizon(128), {SetDescriptor::progression(2, 0)}, Exec::Serial);
  CHECK(verdict_of(rs, "M4") == Verdict::FailsWithWitness);
  const Witness& w = *find_condition(rs, "M4").witness;
  CHECK(w.n % 2 == 0);
  CHECK(w.value == Scalar(1));
  // evens has density 1/2, so it is not a test set for density zero
  CHECK_THROWS_AS(check_regular_singleton(matrices::identity(), IdealSpec::density_zero(), fin,
                                          TargetOperator{OperatorEntry::scalar(Scalar(1))}, horizon(128),
                                          {SetDescriptor::progression(2, 0)}, Exec::Serial),
                  PreconditionError);
}

TEST_CASE("shift averages of the identity pass L1-L3 on finite test sets") {
  std::vector<OperatorMatrix> members;
  for (std::size_t nu = 0; nu < 3; ++nu) members.push_back(sigma_matrix(SigmaMap::shift(), nu));
  auto rs = check_uniform_core_inclusion(MatrixFamily(members), IdealSpec::fin(), horizon(128),
                                         {SetDescriptor::finite({0, 2})}, Exec::Serial);
  CHECK(rs.size() == 3);
  CHECK(all_hold(rs));
}

TEST_CASE("identity is almost regular under the shift with test set {0}") {
  IdealSpec fin = IdealSpec::fin();
  HorizonParams h = horizon(64);
  auto r = check_almost_regular(matrices::identity(), SigmaMap::shift(), fin, fin,
                                TargetOperator{OperatorEntry::scalar(Scalar(1))}, h, {SetDescriptor::finite({0})},
                                Exec::Serial);
  CHECK(all_hold(r.k_route));
  CHECK(r.routes_agree);
}
