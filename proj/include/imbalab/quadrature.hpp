#pragma once

#include <cstddef>
#include <functional>

namespace imbalab {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error, |K15 - G7| summed over the final partition
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

struct QuadratureOptions {
  int max_depth = 60;                // bisections of any single subinterval
  std::size_t max_intervals = 200000;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// Repeatedly bisects the subinterval with the largest error estimate until the
/// summed estimate is at most `tol`. Deterministic for a fixed f. Throws
/// QuadratureError (carrying the best estimate and its bound) when a
/// subinterval would exceed `max_depth` or the interval budget runs out, and
/// DomainError for b <= a, tol <= 0, or a non-finite integrand value.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                                    const QuadratureOptions& options = {});

}  // namespace imbalab
