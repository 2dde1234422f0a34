#include <doctest.h>

#include <cmath>

#include "core/closed_form.hpp"
#include "riccati_ode_oracle.hpp"

using namespace ltport;

namespace {

ContinuousParams params() { return recover_continuous(default_var_params()); }

constexpr double kTight = 1e-12;

} // namespace

TEST_CASE("time functions at a reference point") {
  // gamma = 5, tau = 10 quarters; values computed independently from the
  // closed-form expressions.
  const ContinuousParams c = params();
  const RiccatiCoefficients k = riccati_coefficients(c, 5.0);
  CHECK(k.c == doctest::Approx(-0.16).epsilon(kTight));
  CHECK(c1_at(k, c, 10.0) ==
        doctest::Approx(-0.03617382260350297).epsilon(kTight));
  CHECK(c2_at(k, 10.0) ==
        doctest::Approx(-1.5325238854315648).epsilon(kTight));
}

TEST_CASE("closed form matches numerical integration of the coefficient ODEs") {
  const ContinuousParams c = params();
  for (double gamma : {1.5, 2.0, 5.0, 15.0, 30.0}) {
    const RiccatiCoefficients k = riccati_coefficients(c, gamma);
    for (double tau : {1.0, 10.0, 40.0}) {
      const auto ode = testing::integrate_coefficients(k, c, tau, 10000);
      CHECK(std::fabs(c1_at(k, c, tau) - ode.c1) < 1e-8);
      CHECK(std::fabs(c2_at(k, tau) - ode.c2) < 1e-8);
    }
  }
}

TEST_CASE("terminal condition") {
  const ContinuousParams c = params();
  for (double gamma : {1.0, 2.0, 5.0, 15.0}) {
    const RiccatiCoefficients k = riccati_coefficients(c, gamma);
    CHECK(c1_at(k, c, 0.0) == 0.0);
    CHECK(c2_at(k, 0.0) == 0.0);
  }
}

TEST_CASE("log investor has no hedging demand") {
  const ContinuousParams c = params();
  const Preferences prefs{1.0, 0.0, 20.0};
  for (double x : {-0.2, 0.0, 0.11, 0.35}) {
    const AllocationDecomposition d = allocation(c, prefs, x, 20.0);
    CHECK(d.hedging == 0.0);
    CHECK(d.myopic == doctest::Approx(x / c.sigma).epsilon(kTight));
    CHECK(d.total == d.myopic);
  }
}

TEST_CASE("no hedging without predictability or correlation") {
  ContinuousParams c = params();
  const Preferences prefs{5.0, 0.0, 10.0};

  SUBCASE("zeta = 0") { c.zeta = 0.0; }
  SUBCASE("rho = 0") { c.rho = 0.0; }
  const AllocationDecomposition d = allocation(c, prefs, 0.2, 10.0);
  CHECK(d.hedging == 0.0);
}

TEST_CASE("coefficient signs for conservative investors") {
  const ContinuousParams c = params();
  for (double gamma : {1.5, 2.0, 5.0, 15.0, 30.0}) {
    const RiccatiCoefficients k = riccati_coefficients(c, gamma);
    CHECK(k.discriminant > 0.0);
    for (double tau : {0.5, 4.0, 40.0, 160.0}) {
      CHECK(c1_at(k, c, tau) <= 0.0);
      CHECK(c2_at(k, tau) <= 0.0);
    }
  }
}

TEST_CASE("hedging demand is nonnegative here") {
  // Negative correlation and gamma > 1 make the hedge long at X >= 0.
  const ContinuousParams c = params();
  for (double gamma : {2.0, 5.0, 15.0})
    for (double x : {0.0, 0.11, 0.35})
      for (double tau : {1.0, 10.0, 40.0}) {
        const Preferences prefs{gamma, 0.0, tau};
        CHECK(allocation(c, prefs, x, tau).hedging >= 0.0);
      }
}

TEST_CASE("myopic demand ignores the horizon") {
  const ContinuousParams c = params();
  const Preferences prefs{5.0, 0.0, 40.0};
  const double m = allocation(c, prefs, 0.11, 40.0).myopic;
  for (double tau : {0.25, 1.0, 10.0})
    CHECK(allocation(c, prefs, 0.11, tau).myopic == m);
}

TEST_CASE("total demand increases in the Sharpe ratio") {
  const ContinuousParams c = params();
  const Preferences prefs{5.0, 0.0, 10.0};
  double prev = allocation(c, prefs, -0.4, 10.0).total;
  for (double x = -0.35; x < 0.45; x += 0.05) {
    const double cur = allocation(c, prefs, x, 10.0).total;
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("extreme risk aversion drives demand to zero") {
  const ContinuousParams c = params();
  const Preferences prefs{1e6, 0.0, 10.0};
  CHECK(std::fabs(allocation(c, prefs, 0.11, 10.0).total) < 1e-4);
}

TEST_CASE("constraint clips the sum only") {
  const ContinuousParams c = params();
  const Preferences prefs{5.0, 0.0, 40.0};
  const AllocationDecomposition d = allocation(c, prefs, 0.6, 40.0);
  CHECK(d.total > 1.0);
  CHECK(d.constrained == 1.0);
  CHECK(constrained_allocation(c, prefs, -0.5, 40.0) == 0.0);
  CHECK(d.total == doctest::Approx(d.myopic + d.hedging).epsilon(kTight));
}

TEST_CASE("discount rate does not move the allocation") {
  const ContinuousParams c = params();
  const AllocationDecomposition a =
      allocation(c, Preferences{5.0, 0.0, 10.0}, 0.11, 10.0);
  const AllocationDecomposition b =
      allocation(c, Preferences{5.0, 0.05, 10.0}, 0.11, 10.0);
  CHECK(a.total == b.total);
}

TEST_CASE("reference allocations") {
  const ContinuousParams c = params();
  // Start of the allocation path at gamma 5, T 10, 30th-percentile X.
  CHECK(allocation(c, Preferences{5.0, 0.0, 10.0}, 0.011503684150439591, 10.0)
            .total == doctest::Approx(0.06512699047735422).epsilon(kTight));
  // Hedging demand at gamma 20, tau 10, X at its stationary mean.
  CHECK(allocation(c, Preferences{20.0, 0.0, 10.0}, 0.11065666703450061, 10.0)
            .hedging == doctest::Approx(0.04373412420037828).epsilon(kTight));
}

TEST_CASE("invalid preferences") {
  const ContinuousParams c = params();
  CHECK_THROWS_AS(allocation(c, Preferences{0.0, 0.0, 10.0}, 0.1, 10.0),
                  InvalidParams);
  CHECK_THROWS_AS(allocation(c, Preferences{-2.0, 0.0, 10.0}, 0.1, 10.0),
                  InvalidParams);
  CHECK_THROWS_AS(allocation(c, Preferences{5.0, 0.0, 10.0}, 0.1, -1.0),
                  InvalidParams);
}

TEST_CASE("oscillatory regime is reported, not silently computed") {
  // Small gamma with strong predictability can push the discriminant
  // negative; the computation must refuse rather than return garbage.
  ContinuousParams c = params();
  c.zeta = 0.8;
  c.rho = 0.0;
  c.kappa = 0.01;
  bool threw = false;
  try {
    riccati_coefficients(c, 0.05);
  } catch (const NonNormalRegime &) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("sweeps agree with pointwise evaluation") {
  const ContinuousParams c = params();
  SweepSpec spec;
  spec.kind = SweepKind::GammaSweep;
  spec.component = SweepComponent::Hedging;
  spec.grid = {2.0, 5.0, 10.0, 20.0};
  spec.horizon = 40.0;
  spec.x = 0.11065666703450061;
  const auto rows = sweep(c, spec);
  REQUIRE(rows.size() == spec.grid.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].first == spec.grid[i]);
    CHECK(rows[i].second ==
          allocation(c, Preferences{spec.grid[i], 0.0, spec.horizon}, spec.x,
                     spec.horizon)
              .hedging);
  }

  spec.kind = SweepKind::HorizonSweep;
  spec.component = SweepComponent::Total;
  spec.grid = {0.0, 1.0, 10.0, 40.0};
  spec.gamma = 5.0;
  const auto rows2 = sweep(c, spec);
  REQUIRE(rows2.size() == spec.grid.size());
  for (std::size_t i = 0; i < rows2.size(); ++i)
    CHECK(rows2[i].second ==
          allocation(c, Preferences{spec.gamma, 0.0, spec.grid[i]}, spec.x,
                     spec.grid[i])
              .total);
}
