#pragma once

// Test-only numerical oracle: integrates the coefficient ODEs of the value
// function backward from the terminal condition C1 = C2 = 0 with classical
// fourth-order Runge-Kutta, for comparison against the closed-form time
// functions. In time-to-go tau the system reads
//   dC2/dtau = a C2^2 + b C2 + c
//   dC1/dtau = kappa theta C2 + (b/2 + a C2) C1.

#include "core/closed_form.hpp"

namespace ltport::testing {

struct OdeSolution {
  double c1 = 0.0;
  double c2 = 0.0;
};

inline OdeSolution integrate_coefficients(const RiccatiCoefficients &k,
                                          const ContinuousParams &cont,
                                          double tau, int n_steps) {
  const double h = tau / n_steps;
  const auto f2 = [&](double c2) { return (k.a * c2 + k.b) * c2 + k.c; };
  const auto f1 = [&](double c1, double c2) {
    return k.gamma == 1.0 ? 0.0
                          : cont.kappa * cont.theta * c2 +
                                (0.5 * k.b + k.a * c2) * c1;
  };
  OdeSolution s;
  for (int i = 0; i < n_steps; ++i) {
    const double k2a = f2(s.c2);
    const double k1a = f1(s.c1, s.c2);
    const double k2b = f2(s.c2 + 0.5 * h * k2a);
    const double k1b = f1(s.c1 + 0.5 * h * k1a, s.c2 + 0.5 * h * k2a);
    const double k2c = f2(s.c2 + 0.5 * h * k2b);
    const double k1c = f1(s.c1 + 0.5 * h * k1b, s.c2 + 0.5 * h * k2b);
    const double k2d = f2(s.c2 + h * k2c);
    const double k1d = f1(s.c1 + h * k1c, s.c2 + h * k2c);
    s.c2 += h / 6.0 * (k2a + 2.0 * k2b + 2.0 * k2c + k2d);
    s.c1 += h / 6.0 * (k1a + 2.0 * k1b + 2.0 * k1c + k1d);
  }
  return s;
}

} // namespace ltport::testing
