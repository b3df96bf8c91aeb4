#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "alphaleak/errors.hpp"
#include "alphaleak/prob.hpp"
#include "testutil.hpp"

using namespace alphaleak;

TEST_CASE("pmf validation accepts and rejects as documented") {
  CHECK_NOTHROW(ProbVec::validate({0.5, 0.5}));
  CHECK_NOTHROW(ProbVec::validate({1.0}));
  CHECK_NOTHROW(ProbVec::validate({0.5, 0.25, 0.25}, {"a", "b", "c"}));

  CHECK_THROWS_WITH_AS(ProbVec::validate({}), doctest::Contains("EmptyVector"),
                       InvalidInput);
  CHECK_THROWS_WITH_AS(ProbVec::validate({0.5, -0.5, 1.0}),
                       doctest::Contains("NegativeMass"), InvalidInput);
  CHECK_THROWS_WITH_AS(ProbVec::validate({0.5, 0.4}),
                       doctest::Contains("SumOutOfTolerance"), InvalidInput);
  // Tolerance boundary: 1e-10 off is fine, 1e-8 off is not.
  CHECK_NOTHROW(ProbVec::validate({0.5, 0.5 + 1e-10}));
  CHECK_THROWS_AS(ProbVec::validate({0.5, 0.5 + 1e-8}), InvalidInput);
  // Label count must match the alphabet.
  CHECK_THROWS_AS(ProbVec::validate({0.5, 0.5}, {"only-one"}), InvalidInput);
}

TEST_CASE("support and max mass") {
  const ProbVec p = ProbVec::validate({0.5, 0.0, 0.5});
  CHECK(p.support() == std::vector<std::size_t>{0, 2});
  CHECK(p.support_size() == 2);
  CHECK(p.max_mass() == 0.5);
  CHECK(ProbVec::uniform(4).support_size() == 4);
}

TEST_CASE("channel validation") {
  CHECK_NOTHROW(Channel::validate({{0.9, 0.1}, {0.1, 0.9}}));
  CHECK_THROWS_WITH_AS(Channel::validate({}), doctest::Contains("EmptyVector"),
                       InvalidInput);
  CHECK_THROWS_WITH_AS(Channel::validate({{0.5, 0.5}, {1.0}}),
                       doctest::Contains("DimensionMismatch"), InvalidInput);
  CHECK_THROWS_AS(Channel::validate({{0.7, 0.2}, {0.5, 0.5}}), InvalidInput);
}

TEST_CASE("tilt branch examples") {
  const ProbVec p = ProbVec::validate({0.75, 0.25});

  const ProbVec t2 = tilt(p, Order::finite(2));
  CHECK(t2[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(t2[1] == doctest::Approx(0.1).epsilon(1e-12));

  const ProbVec t1 = tilt(p, Order::one());
  CHECK(t1[0] == 0.75);
  CHECK(t1[1] == 0.25);

  const ProbVec t0 = tilt(ProbVec::validate({0.5, 0.0, 0.5}), Order::zero());
  CHECK(t0[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t0[1] == 0.0);
  CHECK(t0[2] == doctest::Approx(0.5).epsilon(1e-15));

  const ProbVec tinf = tilt(p, Order::infinity());
  CHECK(tinf[0] == 1.0);
  CHECK(tinf[1] == 0.0);

  // Ties at the max split uniformly.
  const ProbVec ttie = tilt(ProbVec::validate({0.4, 0.4, 0.2}),
                            Order::infinity());
  CHECK(ttie[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ttie[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ttie[2] == 0.0);
}

TEST_CASE("tilt properties on random pmfs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + (rng() % 5);
    const ProbVec p = testutil::random_pmf(rng, n);

    // alpha > 1 concentrates mass on the mode, alpha < 1 flattens.
    const ProbVec up = tilt(p, Order::finite(3));
    const ProbVec down = tilt(p, Order::finite(0.3));
    CHECK(up.max_mass() >= p.max_mass() - 1e-12);
    CHECK(down.max_mass() <= p.max_mass() + 1e-12);

    // Composition: (p tilted by a) tilted by b equals p tilted by ab.
    const ProbVec ab = tilt(tilt(p, Order::finite(2)), Order::finite(3));
    const ProbVec direct = tilt(p, Order::finite(6));
    for (std::size_t x = 0; x < n; ++x) {
      CHECK(ab[x] == doctest::Approx(direct[x]).epsilon(1e-9));
    }

    // Tilting never changes the support at finite orders.
    double total = 0.0;
    for (std::size_t x = 0; x < n; ++x) total += up[x];
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("tilt survives extreme dynamic range") {
  // Direct powering would underflow; the log-domain route must not.
  const ProbVec p = ProbVec::validate({1.0 - 1e-12, 1e-12});
  const ProbVec t = tilt(p, Order::finite(30));
  CHECK(t[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t[1] >= 0.0);
  CHECK(t[1] < 1e-300);
}

TEST_CASE("joint view performs Bayes inversion") {
  const ProbVec prior = ProbVec::validate({0.5, 0.5});
  const Channel z = Channel::validate({{1.0, 0.0}, {0.5, 0.5}});
  const JointView jv = induce(prior, z);

  CHECK(jv.output_marginal()[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(jv.output_marginal()[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(jv.posterior(1)[0] == 0.0);
  CHECK(jv.posterior(1)[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(jv.posterior(0)[0] == doctest::Approx(2.0 / 3).epsilon(1e-12));

  // P(x) W(y|x) = P_Y(y) P(x|y) on random instances.
  std::mt19937_64 rng(12);
  for (int i = 0; i < 20; ++i) {
    const std::size_t nx = 2 + (rng() % 3), ny = 2 + (rng() % 3);
    const ProbVec p = testutil::random_pmf(rng, nx);
    const Channel ch = testutil::random_channel(rng, nx, ny);
    const JointView v = induce(p, ch);
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t x = 0; x < nx; ++x) {
        CHECK(p[x] * ch.at(x, y) ==
              doctest::Approx(v.output_marginal()[y] * v.posterior(y)[x])
                  .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("zero-marginal outputs have no posterior") {
  const ProbVec prior = ProbVec::validate({1.0, 0.0});
  const Channel ch = Channel::validate({{1.0, 0.0}, {0.0, 1.0}});
  const JointView jv = induce(prior, ch);
  CHECK(jv.has_posterior(0));
  CHECK_FALSE(jv.has_posterior(1));
  CHECK_THROWS_WITH_AS(jv.posterior(1), doctest::Contains("ZeroOutputMass"),
                       InvalidInput);
}

TEST_CASE("restrict_to") {
  const ProbVec p = ProbVec::validate({0.5, 0.25, 0.25});
  const SubDist s = restrict_to(p, {0, 2});
  CHECK(s.total == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(s.masses == std::vector<double>{0.5, 0.25});
  CHECK(s.indices == std::vector<std::size_t>{0, 2});

  CHECK_THROWS_WITH_AS(restrict_to(p, {}), doctest::Contains("EmptySubset"),
                       InvalidInput);
  CHECK_THROWS_WITH_AS(restrict_to(p, {7}),
                       doctest::Contains("DimensionMismatch"), InvalidInput);
  CHECK_THROWS_WITH_AS(restrict_to(ProbVec::validate({1.0, 0.0}), {1}),
                       doctest::Contains("ZeroTotal"), InvalidInput);
}

TEST_CASE("binomial pmf") {
  const ProbVec b = binomial_pmf(20, 0.5);
  CHECK(b.size() == 21);
  // C(20,10)/2^20 is exactly representable.
  CHECK(b[10] == doctest::Approx(184756.0 / 1048576.0).epsilon(1e-15));
  CHECK(b[0] == doctest::Approx(std::pow(2.0, -20)).epsilon(1e-12));
  double total = 0.0;
  for (std::size_t x = 0; x < b.size(); ++x) total += b[x];
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(binomial_pmf(0, 0.5), InvalidInput);
  CHECK_THROWS_AS(binomial_pmf(5, 0.0), InvalidInput);
  CHECK_THROWS_AS(binomial_pmf(5, 1.0), InvalidInput);
}

TEST_CASE("order parsing") {
  CHECK(Order::parse("0").tag() == Order::Tag::Zero);
  CHECK(Order::parse("1").tag() == Order::Tag::One);
  CHECK(Order::parse("inf").tag() == Order::Tag::Infinity);
  CHECK(Order::parse("infinity").tag() == Order::Tag::Infinity);
  CHECK(Order::parse("2.5").alpha() == 2.5);
  CHECK_THROWS_AS(Order::parse("-1"), InvalidInput);
  CHECK_THROWS_AS(Order::parse("nan"), InvalidInput);
  CHECK_THROWS_AS(Order::parse("banana"), InvalidInput);
  CHECK_THROWS_AS(Order::finite(1.0), InvalidInput);
  CHECK_THROWS_AS(Order::finite(0.0), InvalidInput);
  CHECK(Order::parse("2").str() == "2");
  CHECK(Order::parse("inf").str() == "inf");
}
