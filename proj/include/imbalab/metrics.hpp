#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "imbalab/model.hpp"
#include "imbalab/rules.hpp"

namespace imbalab {

enum class Provenance { analytic, empirical };

std::string_view to_string(Provenance p);

/// Joint-probability confusion matrix: entry (i, j) is P(true class i, predicted j).
/// Rows therefore sum to the class priors and the whole matrix to one.
class ConfusionMatrix {
 public:
  /// Row-major K x K. Throws DimensionError when not square (K >= 2) and
  /// DomainError on negative entries or a total that is not 1 within 1e-10.
  ConfusionMatrix(std::size_t k, std::vector<double> entries, Provenance provenance);

  std::size_t size() const noexcept { return k_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * k_ + j]; }
  std::span<const double> entries() const noexcept { return a_; }
  Provenance provenance() const noexcept { return provenance_; }

  double row_sum(std::size_t i) const;
  double col_sum(std::size_t j) const;

 private:
  std::size_t k_;
  std::vector<double> a_;
  Provenance provenance_;
};

/// The scores that summarise a confusion matrix. Global scores are Hoelder
/// means over the per-class recalls; precision_1/recall_1 are the local scores
/// of the first class.
enum class ScoreKind { precision_1, recall_1, acc, a_mean, g_mean, h_mean, max_r, min_r };

inline constexpr std::array<ScoreKind, 8> kAllScoreKinds = {
    ScoreKind::precision_1, ScoreKind::recall_1, ScoreKind::acc,   ScoreKind::a_mean,
    ScoreKind::g_mean,      ScoreKind::h_mean,   ScoreKind::max_r, ScoreKind::min_r};

std::string_view to_string(ScoreKind kind);

/// Canonical names plus the aliases `max`, `min`, `accuracy`. nullopt if unknown.
std::optional<ScoreKind> parse_score_kind(std::string_view name);

/// Comma-separated list of the canonical names, for usage messages.
std::string score_kind_names();

/// True for the scores that are unweighted means of recalls (a/g/h/max/min).
bool is_recall_mean(ScoreKind kind);

struct ScoreReport {
  std::vector<double> recalls;
  std::vector<double> precisions;
  double acc = 0.0;
  double a_mean = 0.0;
  double g_mean = 0.0;
  double h_mean = 0.0;
  double max_r = 0.0;
  double min_r = 0.0;

  double value(ScoreKind kind) const;
};

/// Every score of the matrix. 0/0 resolves to 1 for both recall and precision.
ScoreReport scores(const ConfusionMatrix& cm);

/// a(i, j) = eta_i * P(X in region j | class i), from the normal CDF.
ConfusionMatrix true_confusion(const GaussianMixtureModel& model, const ThresholdRule& rule);

/// The uniformly random classifier: a(i, j) = eta_i / K.
ConfusionMatrix rand_confusion(const ClassDistribution& eta);

/// Error probability of the Bayes rule (sum of the off-diagonal of its true matrix).
double bayes_error(const GaussianMixtureModel& model);

/// Header `k=K;provenance=...` followed by K comma-separated rows.
std::string format_confusion(const ConfusionMatrix& cm, int digits = 12);

/// Inverse of format_confusion; `#` comment lines and blank lines are skipped.
/// Throws ParseError with the offending line number.
ConfusionMatrix parse_confusion(std::string_view text);

}  // namespace imbalab
