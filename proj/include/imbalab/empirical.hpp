#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "imbalab/execution.hpp"
#include "imbalab/metrics.hpp"
#include "imbalab/model.hpp"
#include "imbalab/rules.hpp"

namespace imbalab {

struct Record {
  double x;
  std::size_t label;  // 0-based; files use 1-based class indices
};

struct LabeledSample {
  std::size_t num_classes = 0;
  std::vector<Record> records;
  std::uint64_t seed = 0;
  std::string source;  // free-form description of the generating model

  std::vector<std::size_t> class_counts() const;
  std::size_t size() const noexcept { return records.size(); }
};

/// n i.i.d. records: the class by inverting the cumulative priors, then
/// x = mu + sigma * Phi^{-1}(u). Record r consumes stream counters 2r and 2r+1,
/// so any prefix is reproducible on its own. Throws DomainError for n = 0.
LabeledSample sample(const GaussianMixtureModel& model, std::size_t n, std::uint64_t seed);

/// Heteroscedastic variant: one sigma per class. Classes keep the given order.
LabeledSample sample(std::span<const double> means, std::span<const double> sigmas, const ClassDistribution& eta,
                     std::size_t n, std::uint64_t seed);

/// Random oversampling: the original records in order, followed by replicates
/// drawn with replacement that lift every class to the largest class count.
/// Throws DomainError if some class has no record.
LabeledSample ros(const LabeledSample& sample, std::uint64_t seed);

/// Random undersampling: every class reduced to the smallest class count by a
/// uniformly random subset; survivors keep their original order.
/// Throws DomainError if some class has no record.
LabeledSample rus(const LabeledSample& sample, std::uint64_t seed);

struct PluginFit {
  GaussianMixtureModel model;
  ThresholdRule rule;
};

/// Frequency priors, per-class means, pooled standard deviation (or
/// `sigma_known`), then the Bayes rule of that model.
///
/// Throws EstimationError when a class has fewer than two records (one is
/// enough with `sigma_known`), when the fitted means are not strictly increasing
/// in class order, or when the pooled deviation is zero.
PluginFit fit_plugin(const LabeledSample& sample, std::optional<double> sigma_known = std::nullopt);
ThresholdRule fit_plugin_rule(const LabeledSample& sample, std::optional<double> sigma_known = std::nullopt);

/// a(i, j) = #{true i, predicted j} / n. Counting is integer, so the parallel
/// path returns exactly the serial result. Throws DomainError on an empty
/// sample and DimensionError when the rule has a different class count.
ConfusionMatrix empirical_confusion(const LabeledSample& sample, const ThresholdRule& rule,
                                    Execution exec = Execution::parallel);

/// `# sample: classes=K n=N seed=S` and `# source: ...` header lines, then
/// `x,class` rows (1-based class).
std::string format_sample(const LabeledSample& sample, int digits = 12);

/// Reads format_sample output. Other `#` lines are ignored; without a
/// `classes=` header the class count is the largest label. Throws ParseError.
LabeledSample parse_sample(std::string_view text);

}  // namespace imbalab
