#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "imbalab/model.hpp"
#include "imbalab/rules.hpp"

namespace fixtures {

inline imbalab::GaussianMixtureModel example3(double sigma = 0.5) {
  return imbalab::GaussianMixtureModel({3, 5, 6}, sigma, imbalab::ClassDistribution({0.6, 0.3, 0.1}));
}

/// Random priors on the simplex; with `allow_zero` some classes may get exactly 0.
inline imbalab::ClassDistribution random_eta(std::mt19937_64& gen, std::size_t k, bool allow_zero = false) {
  std::uniform_real_distribution<double> w(0.01, 1.0);
  std::bernoulli_distribution zero(0.15);
  std::vector<double> eta(k);
  double tot = 0;
  for (auto& e : eta) tot += (e = (allow_zero && zero(gen)) ? 0.0 : w(gen));
  if (tot == 0) tot = eta[0] = 1.0;
  for (auto& e : eta) e /= tot;
  eta[0] = std::max(0.0, 1.0 - std::accumulate(eta.begin() + 1, eta.end(), 0.0));
  return imbalab::ClassDistribution(eta);
}

/// Means with gaps in [0.2, 3], sigma in [0.3, 2].
inline imbalab::GaussianMixtureModel random_model(std::mt19937_64& gen, std::size_t k, bool allow_zero = false) {
  std::uniform_real_distribution<double> gap(0.2, 3.0), sig(0.3, 2.0), start(-5, 5);
  std::vector<double> mu(k);
  mu[0] = start(gen);
  for (std::size_t i = 1; i < k; ++i) mu[i] = mu[i - 1] + gap(gen);
  const double sigma = sig(gen);
  return imbalab::GaussianMixtureModel(mu, sigma, random_eta(gen, k, allow_zero));
}

/// Ordered cuts drawn around the model's means (occasionally infinite).
inline imbalab::ThresholdRule random_rule(std::mt19937_64& gen, const imbalab::GaussianMixtureModel& m) {
  const std::size_t k = m.num_classes();
  std::uniform_real_distribution<double> x(m.mean(0) - 2 * m.sigma(), m.mean(k - 1) + 2 * m.sigma());
  std::vector<double> cuts(k - 1);
  for (auto& c : cuts) c = x(gen);
  std::sort(cuts.begin(), cuts.end());
  return imbalab::ThresholdRule(cuts);
}

}  // namespace fixtures
