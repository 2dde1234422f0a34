#include "closed_form.hpp"

#include <algorithm>
#include <cmath>

namespace ltport {

namespace {

constexpr double kDenominatorTolerance = 1e-12;

double denominator(const RiccatiCoefficients &coeffs, double tau) {
  const double den =
      2.0 * coeffs.delta -
      (coeffs.b + coeffs.delta) * (1.0 - std::exp(-coeffs.delta * tau));
  if (std::fabs(den) < kDenominatorTolerance)
    throw SingularDenominator("C1/C2 denominator below tolerance at tau = " +
                              std::to_string(tau));
  return den;
}

} // namespace

RiccatiCoefficients riccati_coefficients(const ContinuousParams &cont,
                                         double gamma) {
  if (!(gamma > 0.0))
    throw InvalidParams("gamma must be positive");

  RiccatiCoefficients coeffs;
  coeffs.gamma = gamma;
  coeffs.a =
      (1.0 + (1.0 - gamma) * (cont.rho * cont.rho - 1.0)) * cont.zeta * cont.zeta;
  coeffs.b = 2.0 * ((1.0 - gamma) / gamma * cont.zeta * cont.rho - cont.kappa);
  coeffs.c = (1.0 - gamma) / (gamma * gamma);
  coeffs.discriminant = coeffs.b * coeffs.b - 4.0 * coeffs.a * coeffs.c;
  if (!(coeffs.discriminant > 0.0))
    throw NonNormalRegime(coeffs.discriminant);
  coeffs.delta = std::sqrt(coeffs.discriminant);
  return coeffs;
}

double c2_at(const RiccatiCoefficients &coeffs, double tau) {
  if (!(tau >= 0.0))
    throw InvalidParams("tau must be nonnegative");
  const double em = 1.0 - std::exp(-coeffs.delta * tau);
  return 2.0 * coeffs.c * em / denominator(coeffs, tau);
}

double c1_at(const RiccatiCoefficients &coeffs, const ContinuousParams &cont,
             double tau) {
  if (!(tau >= 0.0))
    throw InvalidParams("tau must be nonnegative");
  const double half = 1.0 - std::exp(-coeffs.delta * tau / 2.0);
  return 4.0 * coeffs.c * cont.kappa * cont.theta / coeffs.delta * half * half /
         denominator(coeffs, tau);
}

AllocationDecomposition allocation(const ContinuousParams &cont,
                                   const Preferences &prefs, double x,
                                   double tau) {
  if (!(prefs.gamma > 0.0))
    throw InvalidParams("gamma must be positive");
  if (!(tau >= 0.0))
    throw InvalidParams("tau must be nonnegative");

  AllocationDecomposition result;
  if (prefs.gamma == 1.0) {
    // Logarithmic utility: c = 0 forces C1 = C2 = 0, so no hedging demand.
    result.myopic = x / cont.sigma;
  } else {
    const RiccatiCoefficients coeffs = riccati_coefficients(cont, prefs.gamma);
    result.c1 = c1_at(coeffs, cont, tau);
    result.c2 = c2_at(coeffs, tau);
    result.myopic = x / (prefs.gamma * cont.sigma);
    result.hedging =
        (result.c1 + result.c2 * x) * cont.zeta / cont.sigma * cont.rho;
  }
  result.total = result.myopic + result.hedging;
  result.constrained = std::clamp(result.total, 0.0, 1.0);
  return result;
}

double constrained_allocation(const ContinuousParams &cont,
                              const Preferences &prefs, double x, double tau) {
  return allocation(cont, prefs, x, tau).constrained;
}

std::vector<std::pair<double, double>> sweep(const ContinuousParams &cont,
                                             const SweepSpec &spec) {
  if (spec.grid.empty())
    throw InvalidParams("sweep grid must be nonempty");
  if (!std::is_sorted(spec.grid.begin(), spec.grid.end()))
    throw InvalidParams("sweep grid must be ascending");

  std::vector<std::pair<double, double>> rows;
  rows.reserve(spec.grid.size());
  for (const double v : spec.grid) {
    Preferences prefs;
    double tau;
    if (spec.kind == SweepKind::GammaSweep) {
      prefs.gamma = v;
      tau = spec.horizon;
    } else {
      prefs.gamma = spec.gamma;
      tau = v;
    }
    const AllocationDecomposition d = allocation(cont, prefs, spec.x, tau);
    double value;
    switch (spec.component) {
    case SweepComponent::Myopic:
      value = d.myopic;
      break;
    case SweepComponent::Hedging:
      value = d.hedging;
      break;
    case SweepComponent::Total:
      value = d.total;
      break;
    default:
      value = d.constrained;
      break;
    }
    rows.emplace_back(v, value);
  }
  return rows;
}

} // namespace ltport
