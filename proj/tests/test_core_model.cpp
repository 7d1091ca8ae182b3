#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "summa/corpus.hpp"
#include "summa/errors.hpp"
#include "summa/matrix.hpp"
#include "summa/scalar.hpp"
#include "summa/sequence.hpp"
#include "summa/set_descriptor.hpp"

using namespace summa;

TEST_CASE("rationals are canonical and parse from p/q") {
  Scalar a = Scalar::ratio(2, 4);
  CHECK(a == Scalar::ratio(1, 2));
  CHECK(a.str() == "1/2");
  CHECK(Scalar::parse("-6/8", ArithMode::Exact) == Scalar::ratio(-3, 4));
  CHECK(Scalar::parse("3", ArithMode::Exact) == Scalar(3));
  CHECK_THROWS_AS(Scalar::parse("1/0", ArithMode::Exact), SchemaError);
  CHECK_THROWS_AS(Scalar::parse("abc", ArithMode::Exact), SchemaError);
}

TEST_CASE("interval scalars enclose the exact value") {
  Scalar third = Scalar::ratio(1, 3).in_mode(ArithMode::Interval);
  CHECK_FALSE(third.is_exact());
  CHECK(third.enclosure().contains(oracle::q(1, 3)));
  Scalar sum = third + third + third;
  CHECK(sum.enclosure().contains(oracle::Q(1)));
  CHECK(equal(sum, Scalar(1)) != Truth::False);
  CHECK(less(Scalar(0), third) == Truth::True);
}

TEST_CASE("truth comparisons on exact scalars are decided") {
  CHECK(less(Scalar::ratio(1, 3), Scalar::ratio(1, 2)) == Truth::True);
  CHECK(less_equal(Scalar(1), Scalar(1)) == Truth::True);
  CHECK(equal(Scalar(1), Scalar(2)) == Truth::False);
  CHECK(max(Scalar(-1), Scalar::ratio(1, 7)) == Scalar::ratio(1, 7));
  CHECK(abs(Scalar(-5)) == Scalar(5));
}

TEST_CASE("simplest rational inside an interval") {
  CHECK(simplest_between(oracle::q(3, 10), oracle::q(2, 5)) == oracle::q(1, 3));
  CHECK(simplest_between(oracle::q(-1, 10), oracle::q(1, 10)) == 0);
  CHECK(simplest_between(oracle::q(7, 3), oracle::q(7, 3)) == oracle::q(7, 3));
}

TEST_CASE("set descriptors agree with brute-force membership") {
  SetDescriptor evens = SetDescriptor::progression(2, 0);
  SetDescriptor threes = SetDescriptor::progression(3, 1);
  SetDescriptor fin = SetDescriptor::finite({0, 4, 9});
  auto u = evens.unite(threes), i = evens.intersect(threes), d = evens.minus(fin), c = threes.complement();
  for (std::size_t n = 0; n < 200; ++n) {
    bool e = n % 2 == 0, t = n % 3 == 1, f = n == 0 || n == 4 || n == 9;
    CHECK(u.contains(n) == (e || t));
    CHECK(i.contains(n) == (e && t));
    CHECK(d.contains(n) == (e && !f));
    CHECK(c.contains(n) == !t);
  }
  CHECK(i.density() == oracle::q(1, 6));
  CHECK(fin.is_finite());
  CHECK_FALSE(evens.is_finite());
  CHECK(fin.max_element() == std::size_t{9});
  CHECK(fin.count_below(5) == 2);
  CHECK(i.subset_of(evens));
  CHECK(evens.without_prefix(10).min_element() == std::size_t{10});
  CHECK(SetDescriptor::range(3, 6).elements_below(100) == std::vector<std::size_t>{3, 4, 5});
}

TEST_CASE("equal sets have equal canonical descriptors") {
  SetDescriptor a = SetDescriptor::progression(2, 0).unite(SetDescriptor::progression(2, 1));
  CHECK(a == SetDescriptor::all());
  SetDescriptor b = SetDescriptor::progression(4, 0).unite(SetDescriptor::progression(4, 2));
  CHECK(b == SetDescriptor::progression(2, 0));
}

TEST_CASE("sequences evaluate periodic and formula tails") {
  auto x = VectorSequence::scalar_periodic("x", {Scalar(1), Scalar(2), Scalar(3)}, {Scalar(9)});
  oracle::Periodic o{{oracle::q(9)}, {oracle::q(1), oracle::q(2), oracle::q(3)}};
  for (std::size_t k = 0; k < 50; ++k) CHECK(x.term(k)[0].exact() == o.at(k));
  CHECK(x.decidable());
  CHECK(x.bound() == Scalar(9));
  auto h = VectorSequence::formula("h", 1, [](std::size_t k) { return Vector{Scalar::ratio(1, long(k + 1))}; },
                                   Scalar(1));
  CHECK_FALSE(h.decidable());
  CHECK(h[3][0] == Scalar::ratio(1, 4));
}

TEST_CASE("pairing of double sequences is a bijection on a prefix") {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t n = 0; n < 500; ++n) {
    auto [i, j] = unpair_index(n);
    CHECK(pair_index(i, j) == n);
    seen.insert({i, j});
  }
  CHECK(seen.size() == 500);
}

TEST_CASE("matrix entries match closed forms") {
  auto c = matrices::cesaro();
  auto e = matrices::euler();
  for (std::size_t n = 0; n < 20; ++n)
    for (std::size_t k = 0; k < 25; ++k) {
      CHECK(c.entry(n, k)(0, 0).exact() == oracle::cesaro_entry(n, k));
      CHECK(e.entry(n, k)(0, 0).exact() == oracle::euler_entry(n, k));
    }
  CHECK(c.norm_bound() == Scalar(1));
  auto row = c.finite_row(4);
  CHECK(row.size() == 5);
}

TEST_CASE("entry norms are l1 operator norms") {
  OperatorEntry a(2, 3, {Scalar(1), Scalar(-2), Scalar::ratio(1, 2), Scalar(3), Scalar(0), Scalar(-1)});
  std::vector<std::vector<oracle::Q>> o = {{1, -2, oracle::q(1, 2)}, {3, 0, -1}};
  CHECK(entry_norm(a).exact() == oracle::l1_operator_norm(o));
  CHECK(entry_abs_sum(a) == Scalar::ratio(15, 2));
  Vector x{Scalar(1), Scalar(1), Scalar(2)};
  Vector y = a.apply(x);
  CHECK(y[0] == Scalar(0));
  CHECK(y[1] == Scalar(1));
}

TEST_CASE("families reject duplicate labels and mixed dimensions") {
  CHECK_THROWS_AS(MatrixFamily({matrices::cesaro(), matrices::cesaro()}), SchemaError);
  CHECK_THROWS_AS(MatrixFamily({matrices::cesaro(1), matrices::cesaro(2, "c2")}), DimensionMismatch);
  MatrixFamily f({matrices::cesaro(), matrices::identity()});
  CHECK(f.norm_bound() == Scalar(1));
  MatrixFamily g({matrices::cesaro(), matrices::lower_ones()});
  CHECK_FALSE(g.norm_bound().has_value());
}

TEST_CASE("banded matrices place entries by residue and offset") {
  auto b = corpus::scalar_matrices().back();  // band-average: (x_{n-1} + x_n)/2
  CHECK(b.label() == "band-average");
  CHECK(b.entry(5, 4) == OperatorEntry::scalar(Scalar::ratio(1, 2)));
  CHECK(b.entry(5, 5) == OperatorEntry::scalar(Scalar::ratio(1, 2)));
  CHECK(b.entry(5, 3).is_zero());
  CHECK(b.entry(5, 6).is_zero());
}
