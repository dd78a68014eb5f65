#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "imbalab/model.hpp"

namespace imbalab {

/// A partition of the real line into K ordered intervals.
///
/// Class i (0-based) owns (cut[i-1], cut[i]] with cut[-1] = -inf and
/// cut[K-1] = +inf. Cuts may be infinite, and equal adjacent cuts encode an
/// empty region, so degenerate rules (e.g. everything to one class) are
/// representable.
class ThresholdRule {
 public:
  /// Throws DomainError when there are no cuts, a cut is NaN, or cuts decrease.
  explicit ThresholdRule(std::vector<double> cuts);

  std::size_t num_classes() const noexcept { return cuts_.size() + 1; }
  std::span<const double> cuts() const noexcept { return cuts_; }

  /// Lower/upper end of class i's region, with the implicit infinities.
  double lower(std::size_t i) const;
  double upper(std::size_t i) const;

  bool region_empty(std::size_t i) const { return !(upper(i) > lower(i)); }

  /// The rule that sends the whole line to class `target`.
  static ThresholdRule constant(std::size_t num_classes, std::size_t target);

  friend bool operator==(const ThresholdRule&, const ThresholdRule&) = default;

 private:
  std::vector<double> cuts_;
};

/// Misclassification costs b(i, j): true class i predicted as j.
class CostMatrix {
 public:
  /// Row-major K x K. Throws DimensionError if not square and DomainError
  /// unless off-diagonal entries are positive and the diagonal is non-negative.
  CostMatrix(std::size_t k, std::vector<double> entries);

  std::size_t size() const noexcept { return k_; }
  double operator()(std::size_t i, std::size_t j) const { return b_[i * k_ + j]; }

 private:
  std::size_t k_;
  std::vector<double> b_;
};

/// Upper envelope of the linear discriminants log(w_i) + mu_i x / s^2 - mu_i^2 / (2 s^2).
///
/// Classes with zero weight never win and get empty regions. Weights need not be
/// normalized. This is the kernel behind bdr, edr and cs_bdr.
ThresholdRule envelope_rule(std::span<const double> means, double sigma, std::span<const double> weights);

/// Boundary between classes i < j when only those two compete.
double pairwise_boundary(double mean_i, double mean_j, double sigma, double weight_i, double weight_j);

/// Bayes decision rule: argmax_i eta_i N(x; mu_i, sigma^2).
ThresholdRule bdr(const GaussianMixtureModel& model);

/// Equiprobable Bayes rule: the Bayes rule with the priors replaced by 1/K.
ThresholdRule edr(const GaussianMixtureModel& model);

/// b(i, j) = eta_i / eta_j. Throws DomainError when some eta_i is 0.
CostMatrix inverse_prior_costs(const ClassDistribution& eta);

/// argmax_i W_i eta_i N(x; mu_i, sigma^2) with W_i = sum_j 1 / b(i, j).
/// Zero-cost entries (only possible on the diagonal) are left out of W_i.
ThresholdRule cs_bdr(const GaussianMixtureModel& model, const CostMatrix& costs);

/// Index of the region containing x. A point on a cut belongs to the lower class.
std::size_t classify(const ThresholdRule& rule, double x);

/// `cuts=c1,c2,...` with 12 significant digits (inf / -inf for infinite cuts).
std::string format_rule(const ThresholdRule& rule, int digits = 12);

/// Accepts `cuts=...` or a bare comma-separated list. Throws ParseError.
ThresholdRule parse_rule(std::string_view text);

}  // namespace imbalab
