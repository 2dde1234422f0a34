#pragma once

namespace ltport {

// Inverse of the standard normal CDF on (0, 1).
//
// Acklam's rational approximation refined by one Halley step against
// erfc, which brings the absolute error to a few ulps (well below the
// 1e-9 the percentile machinery requires). Throws std::domain_error
// outside (0, 1).
double inverse_normal_cdf(double p);

} // namespace ltport
