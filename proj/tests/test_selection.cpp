#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "oracles.hpp"
#include "summa/corpus.hpp"
#include "summa/errors.hpp"
#include "summa/selection.hpp"
#include "summa/transform.hpp"

using namespace summa;

namespace {

HorizonParams horizon(std::size_t N) {
  HorizonParams h;
  h.N = N;
  return h;
}

// First `len` values of a selection: enough to tell apart any two eventually
// periodic words with prefix <= P and period <= Q once len >= P + 2 lcm.
std::vector<std::size_t> signature(const std::function<std::size_t(std::size_t)>& s, std::size_t len) {
  std::vector<std::size_t> v(len);
  for (std::size_t n = 0; n < len; ++n) v[n] = s(n);
  return v;
}

std::size_t brute_force_distinct(std::size_t arity, std::size_t P, std::size_t Q, std::size_t len) {
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t p = 0; p <= P; ++p)
    for (std::size_t q = 1; q <= Q; ++q)
      for (const auto& pre : oracle::words(arity, p))
        for (const auto& per : oracle::words(arity, q))
          seen.insert(signature([&](std::size_t n) { return oracle::select(pre, per, n); }, len));
  return seen.size();
}

}  // namespace

TEST_CASE("eventually periodic selections evaluate and print") {
  auto s = SelectionSeq::eventually_periodic(3, {2}, {0, 1});
  CHECK(s(0) == 2);
  CHECK(s(1) == 0);
  CHECK(s(2) == 1);
  CHECK(s(3) == 0);
  CHECK(s.str() == "prefix [2] period [0,1]");
  CHECK_THROWS_AS(SelectionSeq::eventually_periodic(2, {}, {0, 2}), ArityMismatch);
  CHECK_THROWS_AS(SelectionSeq::eventually_periodic(2, {}, {}), SchemaError);
}

TEST_CASE("enumeration yields each eventually periodic selection once") {
  for (std::size_t arity : {2u, 3u}) {
    for (auto [P, Q] : std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 2}, {2, 3}}) {
      auto sels = enumerate_selections(arity, EnumParams{P, Q, 100000});
      std::size_t len = P + 2 * 6;
      std::set<std::vector<std::size_t>> got;
      for (const auto& s : sels) got.insert(signature([&](std::size_t n) { return s(n); }, len));
      CHECK(got.size() == sels.size());
      CHECK(sels.size() == brute_force_distinct(arity, P, Q, len));
    }
  }
}

TEST_CASE("enumeration respects its budget") {
  CHECK_THROWS_AS(enumerate_selections(4, EnumParams{3, 3, 10}), BudgetExceeded);
}

TEST_CASE("a selected matrix takes row n from member s(n)") {
  MatrixFamily f({matrices::cesaro(), matrices::identity(), matrices::euler()});
  auto s = SelectionSeq::eventually_periodic(3, {1}, {2, 0});
  OperatorMatrix b = select_matrix(f, s);
  for (std::size_t n = 0; n < 12; ++n)
    for (std::size_t k = 0; k < 14; ++k) CHECK(b.entry(n, k) == f[s(n)].entry(n, k));
  CHECK(b.norm_bound() == Scalar(1));
  CHECK_THROWS_AS(select_matrix(f, SelectionSeq::constant(2, 0)), ArityMismatch);
}

TEST_CASE("uniform limit: cesaro family on convergent input") {
  MatrixFamily f({matrices::cesaro(), matrices::delayed(matrices::cesaro(), 1, "c1")});
  auto x = VectorSequence::scalar_constant("s", Scalar(2), {Scalar(0), Scalar(5)});
  UniformLimit u = uniform_limit(f, x, IdealSpec::fin(), horizon(256), Exec::Serial);
  CHECK(u.verdict == Verdict::Holds);
  REQUIRE(u.eta.has_value());
  CHECK((*u.eta)[0] == Scalar(2));
}

TEST_CASE("even/odd rows on the alternating sequence: not uniform, alternating witness") {
  auto r = test_theorem_equivalence(corpus::even_odd_family(), corpus::alternating(), IdealSpec::fin(), horizon(256),
                                    EnumParams{}, Exec::Serial);
  CHECK(r.item_i == Verdict::FailsWithWitness);
  CHECK(r.item_ii == Verdict::FailsWithWitness);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->prefix().empty());
  CHECK(r.witness->period() == std::vector<std::size_t>{0, 1});
  CHECK_FALSE(r.counterexample);
}

TEST_CASE("uniform limsup lhs equals brute force for period-3 input") {
  MatrixFamily f({matrices::cesaro(), matrices::identity(), matrices::unit_mass(1, 1, "shift")});
  oracle::Periodic p{{}, {oracle::q(1), oracle::q(2), oracle::q(3)}};
  auto x = VectorSequence::scalar_periodic("p3", {Scalar(1), Scalar(2), Scalar(3)});
  auto rep = verify_uniform_limsup_identity(f, x, IdealSpec::fin(), horizon(256), EnumParams{1, 3, 4096},
                                            Exec::Serial);
  // cesaro tends to 2, identity and shift sweep the block, so the row max has limsup 3
  auto row_max = [&](std::size_t n) { return std::max(p.at(n), p.at(n + 1)); };
  CHECK(rep.lhs.exact() == oracle::eventual_max(row_max, 30, 3));
  CHECK(rep.adversarial_rhs == rep.lhs);
  CHECK(certainly_le(rep.rhs_lower_bound, rep.lhs));
  CHECK(rep.verdict == Verdict::Holds);
}

TEST_CASE("adversarial selection picks the largest row") {
  MatrixFamily f({matrices::identity(), matrices::unit_mass(1, 1, "shift")});
  auto x = corpus::alternating();
  auto s = adversarial_limsup_selection(f, x, horizon(32), Exec::Serial);
  for (std::size_t n = 0; n < 32; ++n) CHECK(s(n) == (n % 2 == 0 ? 0u : 1u));
}

TEST_CASE("uniform limsup requires a bounded scalar family") {
  MatrixFamily f({matrices::lower_ones()});
  CHECK_THROWS_AS(verify_uniform_limsup_identity(f, corpus::alternating(), IdealSpec::fin(), horizon(32), EnumParams{},
                                                 Exec::Serial),
                  PreconditionError);
}

TEST_CASE("equivalence harness is consistent across the corpus at N=64") {
  std::size_t counterexamples = 0;
  for (const auto& c : corpus::equivalence_cases()) {
    auto r = test_theorem_equivalence(c.family, c.x, c.ideal, horizon(64), EnumParams{}, Exec::Serial);
    if (r.counterexample) ++counterexamples;
    CHECK_MESSAGE(!r.counterexample, c.name);
  }
  CHECK(counterexamples == 0);
}
