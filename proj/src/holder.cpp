#include "imbalab/holder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "imbalab/errors.hpp"

namespace imbalab {

HolderSpec::HolderSpec(double p, std::vector<double> weights) : p_(p), weights_(std::move(weights)) {
  if (std::isnan(p_)) throw DomainError("HolderSpec: exponent is NaN");
  if (weights_.empty()) throw DomainError("HolderSpec: at least one weight is required");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("HolderSpec: weights must be finite and non-negative");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw DomainError("HolderSpec: weights must sum to 1 (got " + std::to_string(total) + ")");
  }
}

HolderSpec HolderSpec::uniform(std::size_t k, double p) {
  if (k == 0) throw DomainError("HolderSpec: at least one weight is required");
  return HolderSpec(p, std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

double holder_mean(std::span<const double> values, const HolderSpec& spec) {
  const auto weights = spec.weights();
  if (values.size() != weights.size()) {
    throw DimensionError("holder_mean: " + std::to_string(values.size()) + " values but " +
                         std::to_string(weights.size()) + " weights");
  }
  for (double v : values) {
    if (!(v >= 0.0)) throw DomainError("holder_mean: values must be non-negative");
  }

  const double p = spec.p();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  double weight_total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] > 0.0) {
      lo = std::min(lo, values[i]);
      hi = std::max(hi, values[i]);
      weight_total += weights[i];
    }
  }
  // Weights may miss 1 by rounding; dividing by p would amplify that near p = 0.
  auto w = [&](std::size_t i) { return weights[i] / weight_total; };

  if (p == std::numeric_limits<double>::infinity()) return hi;
  if (p == -std::numeric_limits<double>::infinity()) return lo;
  if (p <= 0.0 && lo == 0.0) return 0.0;
  if (p > 0.0 && hi == 0.0) return 0.0;

  if (p == 1.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += w(i) * values[i];
    return std::clamp(acc, lo, hi);
  }
  if (p == -1.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (weights[i] > 0.0) acc += w(i) / values[i];
    }
    return std::clamp(1.0 / acc, lo, hi);
  }
  if (p == 0.0) {
    double log_mean = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (weights[i] > 0.0) log_mean += w(i) * std::log(values[i]);
    }
    return std::clamp(std::exp(log_mean), lo, hi);
  }

  // Factor out the extreme that keeps every ratio^p in (0, 1], then work with
  // expm1/log1p so that exponents near zero keep full precision.
  const double ref = p > 0.0 ? hi : lo;
  double excess = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] == 0.0) continue;
    const double log_ratio = values[i] > 0.0 ? std::log(values[i] / ref)
                                             : -std::numeric_limits<double>::infinity();
    excess += w(i) * std::expm1(p * log_ratio);
  }
  const double log_sum = std::log1p(excess);
  return std::clamp(ref * std::exp(log_sum / p), lo, hi);
}

PythagoreanMeans pythagorean_means(std::span<const double> values, std::span<const double> weights) {
  const std::vector<double> w(weights.begin(), weights.end());
  return {holder_mean(values, HolderSpec(1.0, w)), holder_mean(values, HolderSpec(0.0, w)),
          holder_mean(values, HolderSpec(-1.0, w))};
}

}  // namespace imbalab
