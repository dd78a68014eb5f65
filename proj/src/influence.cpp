#include "imbalab/influence.hpp"

#include <cmath>

#include "imbalab/errors.hpp"
#include "imbalab/quadrature.hpp"
#include "imbalab/rules.hpp"
#include "imbalab/text.hpp"

namespace imbalab {

double bayes_rule_score(ScoreKind kind, const GaussianMixtureModel& model) {
  return scores(true_confusion(model, bdr(model))).value(kind);
}

namespace {

InfluenceValue integrate_gap(ScoreKind kind, const ClassDistribution& balanced, const ClassDistribution& eta,
                             double tol) {
  const std::size_t k = eta.size();
  auto integrand = [&](double delta) {
    return bayes_rule_score(kind, delta_family(k, delta, balanced)) -
           bayes_rule_score(kind, delta_family(k, delta, eta));
  };
  const auto r = integrate_adaptive(integrand, kDeltaMin, kDeltaMax, tol);
  return {r.value, r.error};
}

ClassDistribution binary_distribution(double eta_1) {
  if (!(eta_1 >= 0.0 && eta_1 <= 1.0)) throw DomainError("influence_binary: eta_1 must lie in [0, 1]");
  return ClassDistribution({eta_1, 1.0 - eta_1});
}

}  // namespace

InfluenceValue influence_binary(ScoreKind kind, double eta_1, double tol) {
  return integrate_gap(kind, ClassDistribution::uniform(2), binary_distribution(eta_1), tol);
}

InfluenceValue influence_multiclass(ScoreKind kind, std::size_t k, double epsilon, double tol) {
  return integrate_gap(kind, ClassDistribution::uniform(k), epsilon_distribution(k, epsilon), tol);
}

std::string_view to_string(ParameterKind kind) { return kind == ParameterKind::eta ? "eta" : "epsilon"; }

ParameterKind parameter_kind_for(std::size_t k) { return k == 2 ? ParameterKind::eta : ParameterKind::epsilon; }

std::pair<double, double> parameter_range(std::size_t k) {
  if (k < 2) throw DomainError("parameter_range: at least two classes are required");
  if (k == 2) return {0.0, 1.0};
  const double kd = static_cast<double>(k);
  return {-1.0 / kd, (kd - 1.0) / kd};
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw DomainError("uniform_grid: need lo <= hi and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + static_cast<double>(i) * step;
  return grid;
}

std::vector<double> default_grid(std::size_t k) {
  if (k == 2) {
    std::vector<double> grid(99);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i + 1) / 100.0;
    return grid;
  }
  const auto [lo, hi] = parameter_range(k);
  const double a = lo + 1e-6;
  const double b = hi - 1e-6;
  std::vector<double> grid(101);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = a + (b - a) * static_cast<double>(i) / 100.0;
  return grid;
}

std::vector<InfluenceCurve> sweep(std::span<const ScoreKind> kinds, std::size_t k, std::span<const double> grid,
                                  double tol, Execution exec) {
  const auto [lo, hi] = parameter_range(k);
  if (grid.empty()) throw DomainError("sweep: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= lo && grid[i] <= hi)) throw DomainError("sweep: grid node outside the legal parameter range");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("sweep: grid must be strictly increasing");
  }

  std::vector<InfluenceCurve> curves;
  for (ScoreKind kind : kinds) {
    curves.push_back({kind, k, parameter_kind_for(k), tol, std::vector<InfluenceNode>(grid.size())});
  }

  const auto total = static_cast<long>(kinds.size() * grid.size());
  auto evaluate = [&](long task) {
    const auto c = static_cast<std::size_t>(task) / grid.size();
    const auto n = static_cast<std::size_t>(task) % grid.size();
    InfluenceNode& node = curves[c].nodes[n];
    node.parameter = grid[n];
    try {
      const auto v = k == 2 ? influence_binary(kinds[c], grid[n], tol)
                            : influence_multiclass(kinds[c], k, grid[n], tol);
      node.influence = v.value;
      node.quad_error = v.error;
      node.converged = true;
    } catch (const QuadratureError& e) {
      node.influence = e.estimate();
      node.quad_error = e.error_bound();
      node.converged = false;
    }
  };

  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < total; ++t) evaluate(t);
  } else {
    for (long t = 0; t < total; ++t) evaluate(t);
  }
  return curves;
}

std::string format_influence_csv(std::span<const InfluenceCurve> curves) {
  std::string out = "score,K,parameter_kind,parameter,influence,quad_error\n";
  std::string failures;
  for (const auto& curve : curves) {
    for (const auto& node : curve.nodes) {
      const std::string row = std::string(to_string(curve.score)) + "," + std::to_string(curve.k) + "," +
                              std::string(to_string(curve.parameter_kind)) + "," +
                              text::format_double(node.parameter) + "," + text::format_double(node.influence) +
                              "," + text::format_double(node.quad_error);
      out += row + "\n";
      if (!node.converged) failures += "# quadrature-limit " + row + "\n";
    }
  }
  return out + failures;
}

}  // namespace imbalab
