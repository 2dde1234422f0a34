#pragma once

#include <vector>

#include "aggregation.hpp"

namespace ltport {

// CRRA investor over terminal wealth. beta only shifts the value-function
// level, never the allocation; it is carried for completeness and ignored
// by every computation here.
struct Preferences {
  double gamma = 0.0;
  double beta = 0.0;
  double horizon_T = 0.0;
};

// Constants of the Riccati equation for C2, plus the discriminant of its
// quadratic and the gamma they were built for:
//   a = [1 + (1-gamma)(rho^2 - 1)] zeta^2
//   b = 2 [ (1-gamma)/gamma zeta rho - kappa ]
//   c = (1-gamma)/gamma^2
//   D = b^2 - 4ac, delta = sqrt(D)
struct RiccatiCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double discriminant = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
};

// Throws NonNormalRegime when D <= 0 (possible only for gamma <= 1; for
// gamma > 1 the discriminant is provably positive).
RiccatiCoefficients riccati_coefficients(const ContinuousParams &cont,
                                         double gamma);

// Time functions of the normal solution at time-to-go tau >= 0 quarters:
//   C2(tau) = 2c (1 - e^{-delta tau}) / [2 delta - (b+delta)(1 - e^{-delta tau})]
//   C1(tau) = (4 c kappa theta / delta) (1 - e^{-delta tau / 2})^2 / [same]
// Both vanish at tau = 0.
double c2_at(const RiccatiCoefficients &coeffs, double tau);
double c1_at(const RiccatiCoefficients &coeffs, const ContinuousParams &cont,
             double tau);

struct AllocationDecomposition {
  double myopic = 0.0;      // X / (gamma sigma)
  double hedging = 0.0;     // (C1 + C2 X) (zeta / sigma) rho
  double total = 0.0;       // myopic + hedging
  double constrained = 0.0; // total clipped to [0, 1]
  double c1 = 0.0;
  double c2 = 0.0;
};

// Optimal allocation at Sharpe ratio x and time-to-go tau. gamma = 1 is an
// explicit branch with zero hedging demand.
AllocationDecomposition allocation(const ContinuousParams &cont,
                                   const Preferences &prefs, double x,
                                   double tau);

// Total demand clipped to [0, 1]; the clip applies to the sum, never to the
// components separately.
double constrained_allocation(const ContinuousParams &cont,
                              const Preferences &prefs, double x, double tau);

// Plot-ready sweeps of one allocation component over a grid.
enum class SweepKind { GammaSweep, HorizonSweep };
enum class SweepComponent { Myopic, Hedging, Total, Constrained };

struct SweepSpec {
  SweepKind kind = SweepKind::GammaSweep;
  SweepComponent component = SweepComponent::Total;
  std::vector<double> grid; // ascending gammas or horizons
  double gamma = 0.0;       // fixed gamma for horizon sweeps
  double horizon = 0.0;     // fixed horizon (tau) for gamma sweeps
  double x = 0.0;           // Sharpe ratio at which to evaluate
};

std::vector<std::pair<double, double>> sweep(const ContinuousParams &cont,
                                             const SweepSpec &spec);

} // namespace ltport
