#include "imbalab/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "imbalab/errors.hpp"
#include "imbalab/normal.hpp"
#include "imbalab/text.hpp"

namespace imbalab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxK = 3;

// Score of a K <= 3 joint confusion matrix, same conventions as scores().
double fast_score(ScoreKind kind, std::size_t k, const std::array<double, kMaxK * kMaxK>& a) {
  std::array<double, kMaxK> recall{};
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < k; ++j) row += a[i * kMaxK + j];
    recall[i] = row > 0.0 ? std::min(1.0, a[i * kMaxK + i] / row) : 1.0;
    acc += a[i * kMaxK + i];
  }
  double lo = recall[0];
  double hi = recall[0];
  for (std::size_t i = 1; i < k; ++i) {
    lo = std::min(lo, recall[i]);
    hi = std::max(hi, recall[i]);
  }
  const double kd = static_cast<double>(k);
  switch (kind) {
    case ScoreKind::precision_1: {
      double col = 0.0;
      for (std::size_t i = 0; i < k; ++i) col += a[i * kMaxK];
      return col > 0.0 ? std::min(1.0, a[0] / col) : 1.0;
    }
    case ScoreKind::recall_1: return recall[0];
    case ScoreKind::acc: return std::clamp(acc, lo, hi);
    case ScoreKind::a_mean: {
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) s += recall[i];
      return std::clamp(s / kd, lo, hi);
    }
    case ScoreKind::g_mean: {
      if (lo == 0.0) return 0.0;
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) s += std::log(recall[i]);
      return std::clamp(std::exp(s / kd), lo, hi);
    }
    case ScoreKind::h_mean: {
      if (lo == 0.0) return 0.0;
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) s += 1.0 / recall[i];
      return std::clamp(kd / s, lo, hi);
    }
    case ScoreKind::max_r: return hi;
    case ScoreKind::min_r: return lo;
  }
  return 0.0;
}

// Standard-normal tail tables for every candidate cut and class; mass() follows
// normal_mass() exactly so grid scores agree with the analytic path.
class CandidateTable {
 public:
  CandidateTable(const GaussianMixtureModel& model, std::vector<double> candidates)
      : k_(model.num_classes()), t_(std::move(candidates)), cdf_(k_ * t_.size()), sf_(k_ * t_.size()),
        z_(k_ * t_.size()) {
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t c = 0; c < t_.size(); ++c) {
        const double z = (t_[c] - model.mean(i)) / model.sigma();
        z_[i * t_.size() + c] = z;
        cdf_[i * t_.size() + c] = normal_cdf(z);
        sf_[i * t_.size() + c] = normal_sf(z);
      }
    }
  }

  std::size_t size() const { return t_.size(); }
  double cut(std::size_t c) const { return t_[c]; }

  // P(t_lo < X <= t_hi | class i), standardized.
  double mass(std::size_t i, std::size_t lo, std::size_t hi) const {
    const std::size_t base = i * t_.size();
    const double zl = z_[base + lo];
    const double zh = z_[base + hi];
    if (!(zh > zl)) return 0.0;
    if (zl >= 0.0) return sf_[base + lo] - sf_[base + hi];
    if (zh <= 0.0) return cdf_[base + hi] - cdf_[base + lo];
    return 1.0 - cdf_[base + lo] - sf_[base + hi];
  }

 private:
  std::size_t k_;
  std::vector<double> t_;
  std::vector<double> cdf_;
  std::vector<double> sf_;
  std::vector<double> z_;
};

struct GridBest {
  double value = -kInf;
  std::size_t i = 0;
  std::size_t j = 0;

  // Higher score wins; equal scores go to the lexicographically smaller cut vector.
  bool improves_on(const GridBest& other) const {
    if (value != other.value) return value > other.value;
    return i != other.i ? i < other.i : j < other.j;
  }
};

double table_score(const CandidateTable& table, const GaussianMixtureModel& model, ScoreKind kind,
                   std::size_t i, std::size_t j) {
  const std::size_t k = model.num_classes();
  const std::size_t last = table.size() - 1;  // index of +inf; index 0 is -inf
  std::array<double, kMaxK * kMaxK> a{};
  for (std::size_t c = 0; c < k; ++c) {
    const double eta = model.eta()[c];
    if (eta == 0.0) continue;
    if (k == 2) {
      a[c * kMaxK + 0] = eta * table.mass(c, 0, i);
      a[c * kMaxK + 1] = eta * table.mass(c, i, last);
    } else {
      a[c * kMaxK + 0] = eta * table.mass(c, 0, i);
      a[c * kMaxK + 1] = eta * table.mass(c, i, j);
      a[c * kMaxK + 2] = eta * table.mass(c, j, last);
    }
  }
  return fast_score(kind, k, a);
}

GridBest scan_rows(const CandidateTable& table, const GaussianMixtureModel& model, ScoreKind kind,
                   std::size_t row_begin, std::size_t row_end) {
  GridBest best;
  const std::size_t m = table.size();
  for (std::size_t i = row_begin; i < row_end; ++i) {
    if (model.num_classes() == 2) {
      const GridBest cand{table_score(table, model, kind, i, i), i, i};
      if (cand.improves_on(best)) best = cand;
      continue;
    }
    for (std::size_t j = i; j < m; ++j) {
      const GridBest cand{table_score(table, model, kind, i, j), i, j};
      if (cand.improves_on(best)) best = cand;
    }
  }
  return best;
}

GridBest grid_search(const CandidateTable& table, const GaussianMixtureModel& model, ScoreKind kind,
                     Execution exec) {
  const std::size_t m = table.size();
  if (exec == Execution::serial) return scan_rows(table, model, kind, 0, m);

  GridBest best;
#pragma omp parallel
  {
    GridBest local;
#pragma omp for schedule(dynamic, 8) nowait
    for (long i = 0; i < static_cast<long>(m); ++i) {
      const auto row = scan_rows(table, model, kind, static_cast<std::size_t>(i), static_cast<std::size_t>(i) + 1);
      if (row.improves_on(local)) local = row;
    }
#pragma omp critical(imbalab_grid_merge)
    {
      if (local.improves_on(best)) best = local;
    }
  }
  return best;
}

class Refiner {
 public:
  Refiner(const GaussianMixtureModel& model, ScoreKind kind, double box_lo, double box_hi)
      : model_(model), kind_(kind), box_lo_(box_lo), box_hi_(box_hi) {}

  double score(const std::vector<double>& cuts) {
    ++evaluations_;
    return rule_score(model_, ThresholdRule(cuts), kind_);
  }

  std::size_t evaluations() const { return evaluations_; }

  // Allowed interval for coordinate c given its neighbours and the box.
  std::pair<double, double> bracket(const std::vector<double>& cuts, std::size_t c, double radius) const {
    double lo = std::max(cuts[c] - radius, box_lo_);
    double hi = std::min(cuts[c] + radius, box_hi_);
    if (c > 0) lo = std::max(lo, cuts[c - 1]);
    if (c + 1 < cuts.size()) hi = std::min(hi, cuts[c + 1]);
    return {lo, std::max(lo, hi)};
  }

  // Local grid of +/- 2 h around the finite coordinates at spacing h / 10.
  double zoom(std::vector<double>& cuts, double current, double h) {
    constexpr int kHalf = 20;
    const double fine = h / 10.0;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      if (std::isfinite(cuts[c])) free.push_back(c);
    }
    if (free.empty()) return current;
    const std::vector<double> centre = cuts;
    std::vector<double> best = cuts;
    std::vector<double> trial = cuts;

    auto clamp_box = [&](double x) { return std::clamp(x, box_lo_, box_hi_); };
    if (free.size() == 1) {
      const std::size_t c = free[0];
      for (int a = -kHalf; a <= kHalf; ++a) {
        trial = centre;
        trial[c] = clamp_box(centre[c] + a * fine);
        if (!ordered(trial)) continue;
        const double v = score(trial);
        if (v > current) {
          current = v;
          best = trial;
        }
      }
    } else {
      const std::size_t c0 = free[0];
      const std::size_t c1 = free[1];
      for (int a = -kHalf; a <= kHalf; ++a) {
        for (int b = -kHalf; b <= kHalf; ++b) {
          trial = centre;
          trial[c0] = clamp_box(centre[c0] + a * fine);
          trial[c1] = clamp_box(centre[c1] + b * fine);
          if (!ordered(trial)) continue;
          const double v = score(trial);
          if (v > current) {
            current = v;
            best = trial;
          }
        }
      }
    }
    cuts = best;
    return current;
  }

  // Golden-section maximization along coordinate c within +/- radius.
  double golden(std::vector<double>& cuts, std::size_t c, double current, double radius, double tol) {
    if (!std::isfinite(cuts[c])) return current;
    auto [a, b] = bracket(cuts, c, radius);
    if (!(b > a)) return current;
    std::vector<double> trial = cuts;
    auto eval = [&](double x) {
      trial[c] = x;
      return score(trial);
    };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = eval(x1);
    double f2 = eval(x2);
    while (b - a > tol) {
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = eval(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = eval(x2);
      }
    }
    const double x = f1 >= f2 ? x1 : x2;
    const double v = std::max(f1, f2);
    if (v > current) {
      cuts[c] = x;
      return v;
    }
    return current;
  }

 private:
  static bool ordered(const std::vector<double>& cuts) { return std::is_sorted(cuts.begin(), cuts.end()); }

  const GaussianMixtureModel& model_;
  ScoreKind kind_;
  double box_lo_;
  double box_hi_;
  std::size_t evaluations_ = 0;
};

std::vector<double> clamp_into_box(std::span<const double> cuts, double lo, double hi) {
  std::vector<double> out(cuts.begin(), cuts.end());
  for (double& c : out) {
    if (std::isfinite(c)) c = std::clamp(c, lo, hi);
  }
  return out;
}

}  // namespace

double rule_score(const GaussianMixtureModel& model, const ThresholdRule& rule, ScoreKind kind) {
  return scores(true_confusion(model, rule)).value(kind);
}

SearchResult optimize_rule(const GaussianMixtureModel& model, ScoreKind kind, const SearchOptions& options) {
  const std::size_t k = model.num_classes();
  if (k > kMaxK) {
    throw UnsupportedDimensionError("optimize_rule: only K = 2 or K = 3 is supported (got K = " + std::to_string(k) +
                                    ")");
  }
  const double sigma = model.sigma();
  const double step = options.grid_step > 0.0 ? options.grid_step : 0.01 * sigma;
  const double refine_tol = options.refine_tol > 0.0 ? options.refine_tol : 1e-6 * sigma;
  const double box_lo = model.mean(0) - options.box_sigmas * sigma;
  const double box_hi = model.mean(k - 1) + options.box_sigmas * sigma;

  std::vector<double> candidates{-kInf};
  const auto n = static_cast<std::size_t>(std::floor((box_hi - box_lo) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) candidates.push_back(box_lo + static_cast<double>(i) * step);
  candidates.push_back(kInf);
  const CandidateTable table(model, std::move(candidates));

  const GridBest coarse = grid_search(table, model, kind, options.exec);
  std::size_t evaluations = k == 2 ? table.size() : table.size() * (table.size() + 1) / 2;

  std::vector<double> cuts = k == 2 ? std::vector<double>{table.cut(coarse.i)}
                                    : std::vector<double>{table.cut(coarse.i), table.cut(coarse.j)};

  Refiner refiner(model, kind, box_lo, box_hi);
  double value = refiner.score(cuts);

  // The envelope rules belong to the search space; start from them if they are better.
  for (const auto& seed : {bdr(model), edr(model)}) {
    auto seeded = clamp_into_box(seed.cuts(), box_lo, box_hi);
    const double v = refiner.score(seeded);
    if (v > value) {
      value = v;
      cuts = std::move(seeded);
    }
  }

  double h = step;
  while (h > refine_tol) {
    value = refiner.zoom(cuts, value, h);
    h /= 10.0;
  }
  for (int pass = 0; pass < 20; ++pass) {
    const double before = value;
    for (std::size_t c = 0; c < cuts.size(); ++c) value = refiner.golden(cuts, c, value, std::max(h, refine_tol), refine_tol);
    if (!(value > before)) break;
  }

  evaluations += refiner.evaluations();
  ThresholdRule rule(std::move(cuts));
  const double final_value = rule_score(model, rule, kind);
  return {std::move(rule), final_value, kind, evaluations, step};
}

AMeanOptimality amean_optimality_check(const GaussianMixtureModel& model, const SearchOptions& options) {
  const auto result = optimize_rule(model, ScoreKind::a_mean, options);
  const double edr_value = rule_score(model, edr(model), ScoreKind::a_mean);
  const double margin = result.score_value - edr_value;
  return {margin <= 1e-6, margin, result.score_value, edr_value};
}

WitnessReport edr_nonoptimality_witness(std::size_t k, std::span<const ScoreKind> kinds,
                                        const SearchOptions& options) {
  if (k < 2 || k > kMaxK) throw UnsupportedDimensionError("edr_nonoptimality_witness: K must be 2 or 3");
  WitnessReport report;

  auto scan = [&](const std::vector<double>& epsilons, const std::vector<double>& deltas) -> bool {
    for (double eps : epsilons) {
      for (double delta : deltas) {
        const auto model = delta_family(k, delta, epsilon_distribution(k, eps));
        ++report.models_scanned;
        const auto edr_rule = edr(model);
        for (ScoreKind kind : kinds) {
          const auto found = optimize_rule(model, kind, options);
          const double improvement = found.score_value - rule_score(model, edr_rule, kind);
          if (improvement > 1e-4) {
            report.witness = Witness{model, kind, found.rule, improvement};
            return true;
          }
        }
      }
    }
    return false;
  };

  const double kd = static_cast<double>(k);
  if (scan({-0.01, -0.02, -0.05}, {1.0, 2.0, 3.0})) return report;
  // Widen: the whole epsilon range (nudged inwards) and more overlap levels.
  std::vector<double> wide;
  for (int i = 0; i <= 10; ++i) wide.push_back(-1.0 / kd + 1e-3 + (1.0 - 2e-3) * i / 10.0);
  scan(wide, {0.5, 1.0, 2.0, 4.0});
  return report;
}

std::string format_search_csv(std::span<const SearchResult> results) {
  std::string out = "score,cut_1,cut_2,score_value,evaluations\n";
  for (const auto& r : results) {
    const auto cuts = r.rule.cuts();
    out += std::string(to_string(r.score_kind)) + "," + text::format_double(cuts[0]) + "," +
           (cuts.size() > 1 ? text::format_double(cuts[1]) : std::string()) + "," +
           text::format_double(r.score_value) + "," + std::to_string(r.evaluations) + "\n";
  }
  return out;
}

}  // namespace imbalab
