#pragma once

// Standard normal distribution kernels. Every analytic quantity in the
// library reduces to these.

namespace imbalab {

double normal_pdf(double z);

/// Phi(z) = P(Z <= z). Accurate to a few ulp over the whole line.
double normal_cdf(double z);

/// 1 - Phi(z), computed without cancellation for large z.
double normal_sf(double z);

/// P(lo < Z <= hi). Chooses the tail that avoids cancellation; returns 0 when hi <= lo.
/// Infinite endpoints are allowed.
double normal_mass(double lo, double hi);

/// Inverse of Phi on (0, 1) (Wichura's AS241, about 1e-16 relative accuracy).
/// Returns -inf / +inf at 0 / 1; throws DomainError outside [0, 1].
double normal_quantile(double p);

}  // namespace imbalab
