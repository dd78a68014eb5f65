#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "imbalab/execution.hpp"
#include "imbalab/metrics.hpp"
#include "imbalab/model.hpp"

namespace imbalab {

/// Integration range over the overlap parameter delta.
inline constexpr double kDeltaMin = 0.01;
inline constexpr double kDeltaMax = 10.0;
inline constexpr double kDefaultInfluenceTol = 1e-6;

/// Score of the Bayes rule on `model`.
double bayes_rule_score(ScoreKind kind, const GaussianMixtureModel& model);

struct InfluenceValue {
  double value;
  double error;
};

/// Integral over delta in [0.01, 10] of S_B(1/2, delta) - S_B(eta_1, delta) for the
/// two-class delta family. Throws DomainError for eta_1 outside [0, 1] and
/// propagates QuadratureError.
InfluenceValue influence_binary(ScoreKind kind, double eta_1, double tol = kDefaultInfluenceTol);

/// Same integral for K classes under the epsilon parameterization, balanced
/// point epsilon = 0.
InfluenceValue influence_multiclass(ScoreKind kind, std::size_t k, double epsilon,
                                    double tol = kDefaultInfluenceTol);

enum class ParameterKind { eta, epsilon };

std::string_view to_string(ParameterKind kind);

/// eta for K = 2 (the grid holds eta_1), epsilon otherwise.
ParameterKind parameter_kind_for(std::size_t k);

struct InfluenceNode {
  double parameter;
  double influence;
  double quad_error;
  bool converged;  // false: quadrature hit its limit, influence is the best estimate
};

struct InfluenceCurve {
  ScoreKind score;
  std::size_t k;
  ParameterKind parameter_kind;
  double quadrature_tol;
  std::vector<InfluenceNode> nodes;
};

/// Closed legal parameter range for K classes: [0, 1] for eta, [-1/K, (K-1)/K] for epsilon.
std::pair<double, double> parameter_range(std::size_t k);

/// lo, lo + step, ... up to hi (inclusive within a 1e-9 step fraction).
/// Throws DomainError when the grid would be empty.
std::vector<double> uniform_grid(double lo, double hi, double step);

/// 0.01..0.99 step 0.01 for K = 2; 101 nodes over the epsilon range nudged 1e-6 inwards otherwise.
std::vector<double> default_grid(std::size_t k);

/// Influence curves for each score over the grid, in (score, grid) order.
///
/// Nodes are independent and evaluated concurrently under Execution::parallel;
/// the result is identical to the serial path. Quadrature failures are recorded
/// on the node rather than thrown. Throws DomainError for a grid that is not
/// strictly increasing or leaves the legal range.
std::vector<InfluenceCurve> sweep(std::span<const ScoreKind> kinds, std::size_t k, std::span<const double> grid,
                                  double tol = kDefaultInfluenceTol, Execution exec = Execution::parallel);

/// CSV with columns score,K,parameter_kind,parameter,influence,quad_error.
/// Non-converged nodes are additionally listed as `#` comment lines.
std::string format_influence_csv(std::span<const InfluenceCurve> curves);

}  // namespace imbalab
