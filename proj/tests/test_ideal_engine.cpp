#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "summa/corpus.hpp"
#include "summa/errors.hpp"
#include "summa/ideal.hpp"

using namespace summa;

namespace {

HorizonParams horizon(std::size_t N) {
  HorizonParams h;
  h.N = N;
  return h;
}

}  // namespace

TEST_CASE("horizon parameters validate") {
  HorizonParams h;
  CHECK_NOTHROW(h.validate());
  CHECK(h.truncation_tol() == Scalar::ratio(1, 1024));
  h.N = 0;
  CHECK_THROWS_AS(h.validate(), SchemaError);
  h = HorizonParams{};
  h.eps = Scalar(0);
  CHECK_THROWS_AS(h.validate(), SchemaError);
}

TEST_CASE("fin membership: finite sets are in, infinite ones are not") {
  HorizonParams h = horizon(256);
  IdealSpec fin = IdealSpec::fin();
  CHECK(ideal_contains(fin, SetDescriptor::finite({1, 5, 7}), h) == Membership::Yes);
  CHECK(ideal_contains(fin, SetDescriptor::progression(2, 0), h) == Membership::No);
  CHECK(ideal_contains(fin, SetDescriptor::empty(), h) == Membership::Yes);
}

TEST_CASE("density-zero membership on eventually periodic sets") {
  HorizonParams h = horizon(256);
  IdealSpec dz = IdealSpec::density_zero();
  CHECK(ideal_contains(dz, SetDescriptor::finite({0, 3}), h) == Membership::Yes);
  CHECK(ideal_contains(dz, SetDescriptor::progression(5, 2), h) == Membership::No);
}

TEST_CASE("generated ideal contains its generator and not its complement") {
  HorizonParams h = horizon(256);
  IdealSpec evens = IdealSpec::generated_by("evens", SetDescriptor::progression(2, 0));
  CHECK(ideal_contains(evens, SetDescriptor::progression(2, 0), h) == Membership::Yes);
  CHECK(ideal_contains(evens, SetDescriptor::progression(4, 2), h) == Membership::Yes);
  CHECK(ideal_contains(evens, SetDescriptor::progression(2, 1), h) == Membership::No);
}

TEST_CASE("split colors both lie outside the ideal") {
  for (const auto& ideal : corpus::countably_generated_ideals()) {
    std::vector<std::size_t> a, b;
    for (std::size_t n = 0; n < 4096; ++n) (ideal.split(n) ? b : a).push_back(n);
    CHECK_FALSE(a.empty());
    CHECK_FALSE(b.empty());
    // both colors meet every dual set far out
    for (std::size_t t = 0; t < 4; ++t) {
      auto w = ideal.window(t, 4096);
      bool hit_a = false, hit_b = false;
      for (auto n : w) (ideal.split(n) ? hit_b : hit_a) = true;
      CHECK(hit_a);
      CHECK(hit_b);
    }
  }
}

TEST_CASE("ideal limits of eventually periodic sequences match brute force") {
  HorizonParams h = horizon(256);
  IdealSpec fin = IdealSpec::fin();
  auto settles = VectorSequence::scalar_constant("s", Scalar::ratio(1, 2), {Scalar(7), Scalar(-3)});
  IdealLimit l = ideal_lim(settles, fin, h);
  REQUIRE(l.eta.has_value());
  CHECK((*l.eta)[0] == Scalar::ratio(1, 2));
  CHECK(l.exact);

  IdealLimit alt = ideal_lim(corpus::alternating(), fin, h);
  CHECK_FALSE(alt.eta.has_value());
  REQUIRE(alt.separating.has_value());
  CHECK(alt.separating->first[0] != alt.separating->second[0]);
}

TEST_CASE("the evens ideal forgets even indices") {
  HorizonParams h = horizon(256);
  IdealSpec evens = IdealSpec::generated_by("evens", SetDescriptor::progression(2, 0));
  IdealLimit l = ideal_lim(corpus::alternating(), evens, h);  // odd terms are all 0
  REQUIRE(l.eta.has_value());
  CHECK((*l.eta)[0] == Scalar(0));
}

TEST_CASE("harmonic sequence converges to 0 with a recognized limit") {
  HorizonParams h = horizon(256);
  auto x = corpus::convergent_sequences()[4].x;
  IdealLimit l = ideal_lim(x, IdealSpec::fin(), h);
  REQUIRE(l.eta.has_value());
  CHECK((*l.eta)[0] == Scalar(0));
}

TEST_CASE("core of periodic sequences equals brute-force eventual min and max") {
  HorizonParams h = horizon(256);
  IdealSpec fin = IdealSpec::fin();
  oracle::Periodic p{{oracle::q(5)}, {oracle::q(1), oracle::q(2), oracle::q(3)}};
  auto x = VectorSequence::scalar_periodic("p", {Scalar(1), Scalar(2), Scalar(3)}, {Scalar(5)});
  auto [lo, hi] = core(x, fin, h);
  auto y = [&](std::size_t n) { return p.at(n); };
  CHECK(lo.exact() == oracle::eventual_min(y, 10, 3));
  CHECK(hi.exact() == oracle::eventual_max(y, 10, 3));
  ClusterCover cover = cluster_points(x, fin, h);
  CHECK(cover.intervals.size() == 3);
}

TEST_CASE("decide_null_limit reports holds, fails and unknown") {
  HorizonParams h = horizon(64);
  IdealSpec fin = IdealSpec::fin();
  std::vector<Scalar> zeros(64, Scalar(0));
  NullLimitDecision d = decide_null_limit(zeros, zeros, fin, h);
  CHECK(d.verdict == Verdict::Holds);
  CHECK(d.exact_zero);

  std::vector<Scalar> ones(64, Scalar(1));
  NullLimitDecision f = decide_null_limit(ones, ones, fin, h);
  CHECK(f.verdict == Verdict::FailsWithWitness);
  CHECK(f.value == Scalar(1));

  std::vector<Scalar> lower(64, Scalar(0)), upper(64, Scalar::ratio(1, 2));
  NullLimitDecision u = decide_null_limit(upper, lower, fin, h);
  CHECK(u.verdict == Verdict::UnknownAtHorizon);
}

TEST_CASE("an undecidable horizon is reported, not guessed") {
  // spread 3/16 is above 2 eps yet too small to certify two clusters
  SampledSequence s;
  for (std::size_t n = 0; n < 64; ++n) s.values.push_back(Vector{n % 2 ? Scalar::ratio(3, 16) : Scalar(0)});
  CHECK_THROWS_AS(ideal_lim(s, IdealSpec::fin(), horizon(64)), HorizonTooSmall);
}
