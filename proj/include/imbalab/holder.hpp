#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace imbalab {

/// Exponent and weights of a weighted power (Hoelder) mean.
///
/// The exponent is an extended real: +/-infinity select the max/min limits and
/// 0 selects the geometric mean. Weights are non-negative and sum to one.
class HolderSpec {
 public:
  /// Throws DomainError on a NaN exponent, a negative weight, an empty weight
  /// vector, or weights that do not sum to 1 within 1e-12.
  HolderSpec(double p, std::vector<double> weights);

  /// Unweighted mean over `k` values.
  static HolderSpec uniform(std::size_t k, double p);

  double p() const noexcept { return p_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }

 private:
  double p_;
  std::vector<double> weights_;
};

/// M_p(values; weights).
///
/// Values must be non-negative. A zero value contributes 0 when p > 0 and forces
/// the result to 0 when p <= 0. Indices with zero weight are ignored, so the
/// +/-infinity limits are the max/min over positively weighted values.
///
/// Throws DimensionError on a length mismatch and DomainError on a negative or
/// NaN value.
double holder_mean(std::span<const double> values, const HolderSpec& spec);

struct PythagoreanMeans {
  double arithmetic;
  double geometric;
  double harmonic;
};

PythagoreanMeans pythagorean_means(std::span<const double> values, std::span<const double> weights);

}  // namespace imbalab
