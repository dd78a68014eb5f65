#include "imbalab/rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "imbalab/errors.hpp"
#include "imbalab/text.hpp"

namespace imbalab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ThresholdRule::ThresholdRule(std::vector<double> cuts) : cuts_(std::move(cuts)) {
  if (cuts_.empty()) throw DomainError("ThresholdRule: a rule needs at least one cut (two classes)");
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (std::isnan(cuts_[i])) throw DomainError("ThresholdRule: cut is NaN");
    if (i > 0 && cuts_[i] < cuts_[i - 1]) throw DomainError("ThresholdRule: cuts must be non-decreasing");
  }
}

double ThresholdRule::lower(std::size_t i) const { return i == 0 ? -kInf : cuts_[i - 1]; }

double ThresholdRule::upper(std::size_t i) const { return i == cuts_.size() ? kInf : cuts_[i]; }

ThresholdRule ThresholdRule::constant(std::size_t num_classes, std::size_t target) {
  if (num_classes < 2 || target >= num_classes) throw DomainError("ThresholdRule::constant: bad class index");
  std::vector<double> cuts(num_classes - 1);
  for (std::size_t i = 0; i + 1 < num_classes; ++i) cuts[i] = i < target ? -kInf : kInf;
  return ThresholdRule(std::move(cuts));
}

CostMatrix::CostMatrix(std::size_t k, std::vector<double> entries) : k_(k), b_(std::move(entries)) {
  if (k < 2 || b_.size() != k * k) throw DimensionError("CostMatrix: expected a square K x K matrix, K >= 2");
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double b = b_[i * k + j];
      const bool ok = i == j ? b >= 0.0 : b > 0.0;
      if (!ok || !std::isfinite(b)) throw DomainError("CostMatrix: off-diagonal costs must be positive");
    }
  }
}

double pairwise_boundary(double mean_i, double mean_j, double sigma, double weight_i, double weight_j) {
  return 0.5 * (mean_i + mean_j) + sigma * sigma * std::log(weight_i / weight_j) / (mean_j - mean_i);
}

ThresholdRule envelope_rule(std::span<const double> means, double sigma, std::span<const double> weights) {
  const std::size_t k = means.size();
  if (weights.size() != k) throw DimensionError("envelope_rule: means and weights differ in length");
  if (k < 2) throw DomainError("envelope_rule: at least two classes are required");

  // Slopes mu_i / sigma^2 increase with i, so a single monotone-stack pass
  // yields the upper envelope.
  std::vector<std::size_t> hull;
  hull.reserve(k);
  auto boundary = [&](std::size_t a, std::size_t b) {
    return pairwise_boundary(means[a], means[b], sigma, weights[a], weights[b]);
  };
  for (std::size_t j = 0; j < k; ++j) {
    if (!(weights[j] > 0.0)) continue;
    while (hull.size() >= 2 &&
           boundary(hull[hull.size() - 2], j) <= boundary(hull[hull.size() - 2], hull.back())) {
      hull.pop_back();
    }
    hull.push_back(j);
  }
  if (hull.empty()) throw DomainError("envelope_rule: every class has zero weight");

  std::vector<double> cuts(k - 1);
  std::size_t pos = 0;  // hull[pos] is the last member with index <= c
  bool any = false;
  for (std::size_t c = 0; c + 1 < k; ++c) {
    while (pos < hull.size() && hull[pos] <= c) {
      any = true;
      ++pos;
    }
    if (!any) {
      cuts[c] = -kInf;
    } else if (pos == hull.size()) {
      cuts[c] = kInf;
    } else {
      cuts[c] = boundary(hull[pos - 1], hull[pos]);
    }
    if (c > 0) cuts[c] = std::max(cuts[c], cuts[c - 1]);
  }
  return ThresholdRule(std::move(cuts));
}

ThresholdRule bdr(const GaussianMixtureModel& model) {
  return envelope_rule(model.means(), model.sigma(), model.eta().values());
}

ThresholdRule edr(const GaussianMixtureModel& model) {
  const std::vector<double> uniform(model.num_classes(), 1.0 / static_cast<double>(model.num_classes()));
  return envelope_rule(model.means(), model.sigma(), uniform);
}

CostMatrix inverse_prior_costs(const ClassDistribution& eta) {
  const std::size_t k = eta.size();
  std::vector<double> b(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(eta[i] > 0.0)) throw DomainError("inverse_prior_costs: every class probability must be positive");
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) b[i * k + j] = eta[i] / eta[j];
  }
  return CostMatrix(k, std::move(b));
}

ThresholdRule cs_bdr(const GaussianMixtureModel& model, const CostMatrix& costs) {
  const std::size_t k = model.num_classes();
  if (costs.size() != k) throw DimensionError("cs_bdr: cost matrix size does not match the model");
  std::vector<double> weights(k);
  for (std::size_t i = 0; i < k; ++i) {
    double w = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (costs(i, j) > 0.0) w += 1.0 / costs(i, j);
    }
    weights[i] = w * model.eta()[i];
  }
  return envelope_rule(model.means(), model.sigma(), weights);
}

std::size_t classify(const ThresholdRule& rule, double x) {
  const auto cuts = rule.cuts();
  return static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
}

std::string format_rule(const ThresholdRule& rule, int digits) {
  const std::vector<double> cuts(rule.cuts().begin(), rule.cuts().end());
  return "cuts=" + text::join(cuts, digits);
}

ThresholdRule parse_rule(std::string_view s) {
  s = text::trim(s);
  if (s.starts_with("cuts=")) s.remove_prefix(5);
  auto cuts = text::parse_double_list(s);
  if (!cuts) throw ParseError("rule: expected comma-separated cuts", 0);
  try {
    return ThresholdRule(std::move(*cuts));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace imbalab
