#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "imbalab/execution.hpp"
#include "imbalab/metrics.hpp"
#include "imbalab/model.hpp"
#include "imbalab/rules.hpp"

namespace imbalab {

struct SearchOptions {
  /// Coarse grid spacing in feature units; 0 selects 0.01 sigma.
  double grid_step = 0.0;
  /// Final refinement resolution in feature units; 0 selects 1e-6 sigma.
  double refine_tol = 0.0;
  /// The box extends this many sigmas beyond the extreme means.
  double box_sigmas = 6.0;
  Execution exec = Execution::parallel;
};

struct SearchResult {
  ThresholdRule rule;
  double score_value;
  ScoreKind score_kind;
  std::size_t evaluations;
  double grid_step;
};

/// Score of `rule` on `model`, through the analytic confusion matrix.
double rule_score(const GaussianMixtureModel& model, const ThresholdRule& rule, ScoreKind kind);

/// Best ordered threshold rule for `kind` on a two- or three-class model.
///
/// Class i keeps the i-th interval. The search covers every ordered cut vector
/// on a grid over [mu_1 - 6 sigma, mu_K + 6 sigma] plus the infinite cuts that
/// empty a region, and the Bayes and equiprobable rules. The grid winner
/// (lexicographically smallest cut vector on ties) is refined by successively
/// finer local grids and then a per-coordinate golden-section pass down to
/// `refine_tol`. Throws UnsupportedDimensionError for K > 3.
SearchResult optimize_rule(const GaussianMixtureModel& model, ScoreKind kind, const SearchOptions& options = {});

struct AMeanOptimality {
  bool holds;
  double margin;  // best searched a-mean minus the equiprobable rule's a-mean
  double search_value;
  double edr_value;
};

/// Searches for the a-mean optimum and checks it does not beat the equiprobable rule by more than 1e-6.
AMeanOptimality amean_optimality_check(const GaussianMixtureModel& model, const SearchOptions& options = {});

struct Witness {
  GaussianMixtureModel model;
  ScoreKind score_kind;
  ThresholdRule rule;
  double improvement;  // searched score minus the equiprobable rule's score
};

struct WitnessReport {
  std::optional<Witness> witness;
  std::size_t models_scanned = 0;
};

/// Scans delta-family models with a slightly multi-majority epsilon first, then a
/// wider epsilon/delta range, for a case where the search beats the equiprobable
/// rule by more than 1e-4 on one of `kinds`. For K = 2, epsilon shifts eta_1 away
/// from 1/2. An empty witness is a normal outcome.
WitnessReport edr_nonoptimality_witness(std::size_t k, std::span<const ScoreKind> kinds,
                                        const SearchOptions& options = {});

/// CSV row set with columns score,cut_1,cut_2,score_value,evaluations (cut_2 empty for K = 2).
std::string format_search_csv(std::span<const SearchResult> results);

}  // namespace imbalab
