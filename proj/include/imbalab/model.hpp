#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace imbalab {

/// Class prior vector eta on the probability simplex, K >= 2.
class ClassDistribution {
 public:
  /// Throws DomainError when K < 2, an entry leaves [0, 1], or the sum is not 1 within 1e-12.
  explicit ClassDistribution(std::vector<double> eta);

  /// The equiprobable distribution e.
  static ClassDistribution uniform(std::size_t k);

  std::size_t size() const noexcept { return eta_.size(); }
  double operator[](std::size_t i) const { return eta_[i]; }
  std::span<const double> values() const noexcept { return eta_; }

  bool is_uniform() const;

 private:
  std::vector<double> eta_;
};

enum class ImbalanceKind { balanced, multi_majority, multi_minority };

std::string_view to_string(ImbalanceKind kind);

/// Univariate homoscedastic Gaussian class-conditionals with priors.
///
/// Classes are stored in strictly increasing order of their means; the
/// constructor relabels when given another order and remembers the mapping.
class GaussianMixtureModel {
 public:
  /// Throws DimensionError when the means and priors disagree in length, and
  /// DomainError for a non-positive sigma, non-finite means, or repeated means.
  GaussianMixtureModel(std::vector<double> means, double sigma, ClassDistribution eta);

  std::size_t num_classes() const noexcept { return means_.size(); }
  std::span<const double> means() const noexcept { return means_; }
  double mean(std::size_t i) const { return means_[i]; }
  double sigma() const noexcept { return sigma_; }
  const ClassDistribution& eta() const noexcept { return eta_; }

  /// original_label()[i] is the position class i had in the constructor input.
  std::span<const std::size_t> original_label() const noexcept { return original_label_; }

  /// Same geometry, different priors.
  GaussianMixtureModel with_eta(ClassDistribution eta) const;

  /// eta_i * N(x; mu_i, sigma^2)
  double weighted_density(std::size_t i, double x) const;

 private:
  std::vector<double> means_;
  double sigma_;
  ClassDistribution eta_;
  std::vector<std::size_t> original_label_;
};

/// The equally spaced unit-variance family: mu_i = i * delta (0-based), sigma = 1.
GaussianMixtureModel delta_family(std::size_t k, double delta, const ClassDistribution& eta);

/// eta_0 = 1/K + epsilon, every other class 1/K - epsilon/(K-1).
/// Throws DomainError unless epsilon lies in [-1/K, (K-1)/K].
ClassDistribution epsilon_distribution(std::size_t k, double epsilon);

ImbalanceKind imbalance_kind(const ClassDistribution& eta);

/// Parses the key=value model format (`K=3`, `means=3,5,6`, `sigma=0.5`,
/// `eta=0.6,0.3,0.1`; `#` comments and blank lines allowed). Throws ParseError.
GaussianMixtureModel parse_model(std::string_view text);

/// Inverse of parse_model, one key per line, 17 significant digits.
std::string format_model(const GaussianMixtureModel& model);

}  // namespace imbalab
