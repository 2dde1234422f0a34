#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "core/norminv.hpp"

using ltport::inverse_normal_cdf;

TEST_CASE("reference quantiles") {
  // Reference values computed with an independent high-precision
  // implementation of the inverse normal CDF.
  CHECK(inverse_normal_cdf(0.1) == doctest::Approx(-1.2815515655446004).epsilon(1e-12));
  CHECK(inverse_normal_cdf(0.3) == doctest::Approx(-0.5244005127080409).epsilon(1e-12));
  CHECK(inverse_normal_cdf(0.9) == doctest::Approx(1.2815515655446004).epsilon(1e-12));
  CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(inverse_normal_cdf(0.99) == doctest::Approx(2.3263478740408408).epsilon(1e-12));
  CHECK(inverse_normal_cdf(0.001) == doctest::Approx(-3.090232306167813).epsilon(1e-12));
  CHECK(inverse_normal_cdf(1e-6) == doctest::Approx(-4.753424308822899).epsilon(1e-12));
  CHECK(inverse_normal_cdf(1e-9) == doctest::Approx(-5.9978070150076865).epsilon(1e-12));
}

TEST_CASE("round trip against erfc") {
  for (double p = 0.0005; p < 1.0; p += 0.0005) {
    const double x = inverse_normal_cdf(p);
    const double back = 0.5 * std::erfc(-x / std::sqrt(2.0));
    CHECK(std::fabs(back - p) < 1e-13);
  }
}

TEST_CASE("symmetry and median") {
  CHECK(inverse_normal_cdf(0.5) == 0.0);
  for (double p : {0.01, 0.1, 0.25, 0.4}) {
    CHECK(inverse_normal_cdf(p) == doctest::Approx(-inverse_normal_cdf(1.0 - p)).epsilon(1e-14));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS(inverse_normal_cdf(0.0));
  CHECK_THROWS(inverse_normal_cdf(1.0));
  CHECK_THROWS(inverse_normal_cdf(-0.1));
  CHECK_THROWS(inverse_normal_cdf(1.1));
}
