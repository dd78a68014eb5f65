#include "imbalab/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "imbalab/errors.hpp"
#include "imbalab/text.hpp"

namespace imbalab {

ClassDistribution::ClassDistribution(std::vector<double> eta) : eta_(std::move(eta)) {
  if (eta_.size() < 2) throw DomainError("ClassDistribution: at least two classes are required");
  double total = 0.0;
  for (double p : eta_) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("ClassDistribution: probabilities must lie in [0, 1]");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-12) throw DomainError("ClassDistribution: probabilities must sum to 1");
}

ClassDistribution ClassDistribution::uniform(std::size_t k) {
  if (k < 2) throw DomainError("ClassDistribution: at least two classes are required");
  return ClassDistribution(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

bool ClassDistribution::is_uniform() const {
  const double e = 1.0 / static_cast<double>(eta_.size());
  return std::all_of(eta_.begin(), eta_.end(), [e](double p) { return std::fabs(p - e) <= 1e-12; });
}

std::string_view to_string(ImbalanceKind kind) {
  switch (kind) {
    case ImbalanceKind::balanced: return "balanced";
    case ImbalanceKind::multi_majority: return "multi-majority";
    case ImbalanceKind::multi_minority: return "multi-minority";
  }
  return "unknown";
}

GaussianMixtureModel::GaussianMixtureModel(std::vector<double> means, double sigma, ClassDistribution eta)
    : sigma_(sigma), eta_(std::move(eta)) {
  if (means.size() != eta_.size()) {
    throw DimensionError("GaussianMixtureModel: " + std::to_string(means.size()) + " means but " +
                         std::to_string(eta_.size()) + " class probabilities");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("GaussianMixtureModel: sigma must be positive");
  for (double m : means) {
    if (!std::isfinite(m)) throw DomainError("GaussianMixtureModel: means must be finite");
  }

  original_label_.resize(means.size());
  std::iota(original_label_.begin(), original_label_.end(), std::size_t{0});
  std::stable_sort(original_label_.begin(), original_label_.end(),
                   [&](std::size_t a, std::size_t b) { return means[a] < means[b]; });

  means_.reserve(means.size());
  std::vector<double> sorted_eta;
  sorted_eta.reserve(means.size());
  for (std::size_t idx : original_label_) {
    means_.push_back(means[idx]);
    sorted_eta.push_back(eta_[idx]);
  }
  for (std::size_t i = 1; i < means_.size(); ++i) {
    if (!(means_[i] > means_[i - 1])) throw DomainError("GaussianMixtureModel: class means must be distinct");
  }
  if (!std::is_sorted(original_label_.begin(), original_label_.end())) {
    eta_ = ClassDistribution(std::move(sorted_eta));
  }
}

GaussianMixtureModel GaussianMixtureModel::with_eta(ClassDistribution eta) const {
  return GaussianMixtureModel(means_, sigma_, std::move(eta));
}

double GaussianMixtureModel::weighted_density(std::size_t i, double x) const {
  const double z = (x - means_[i]) / sigma_;
  return eta_[i] * std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * std::numbers::pi));
}

GaussianMixtureModel delta_family(std::size_t k, double delta, const ClassDistribution& eta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("delta_family: delta must be positive");
  if (eta.size() != k) throw DimensionError("delta_family: class distribution has the wrong length");
  std::vector<double> means(k);
  for (std::size_t i = 0; i < k; ++i) means[i] = static_cast<double>(i) * delta;
  return GaussianMixtureModel(std::move(means), 1.0, eta);
}

ClassDistribution epsilon_distribution(std::size_t k, double epsilon) {
  if (k < 2) throw DomainError("epsilon_distribution: at least two classes are required");
  const double kd = static_cast<double>(k);
  if (!(epsilon >= -1.0 / kd && epsilon <= (kd - 1.0) / kd)) {
    throw DomainError("epsilon_distribution: epsilon must lie in [-1/K, (K-1)/K]");
  }
  std::vector<double> eta(k, std::max(0.0, 1.0 / kd - epsilon / (kd - 1.0)));
  eta[0] = std::max(0.0, 1.0 / kd + epsilon);
  // Absorb rounding so the simplex check sees an exact-ish sum.
  const double rest = std::accumulate(eta.begin() + 1, eta.end(), 0.0);
  eta[0] = std::clamp(1.0 - rest, 0.0, 1.0);
  return ClassDistribution(std::move(eta));
}

ImbalanceKind imbalance_kind(const ClassDistribution& eta) {
  if (eta.is_uniform()) return ImbalanceKind::balanced;
  const double e = 1.0 / static_cast<double>(eta.size());
  std::size_t over = 0;
  for (double p : eta.values()) over += p >= e ? 1 : 0;
  // |M| >= K/2  <=>  |m| <= K/2, so the two labels are exclusive and exhaustive.
  return 2 * over >= eta.size() ? ImbalanceKind::multi_majority : ImbalanceKind::multi_minority;
}

GaussianMixtureModel parse_model(std::string_view text) {
  std::map<std::string, std::pair<std::string, std::size_t>, std::less<>> fields;
  std::size_t line_no = 0;
  for (auto raw : text::split(text, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no);
    std::string key(text::trim(line.substr(0, eq)));
    if (key != "K" && key != "means" && key != "sigma" && key != "eta") {
      throw ParseError("unknown key '" + key + "'", line_no);
    }
    if (fields.count(key)) throw ParseError("duplicate key '" + key + "'", line_no);
    fields[key] = {std::string(text::trim(line.substr(eq + 1))), line_no};
  }
  for (const char* required : {"means", "sigma", "eta"}) {
    if (!fields.count(required)) throw ParseError(std::string("missing key '") + required + "'", 0);
  }

  const auto& [means_s, means_line] = fields["means"];
  auto means = text::parse_double_list(means_s);
  if (!means) throw ParseError("means: expected comma-separated reals", means_line);
  const auto& [eta_s, eta_line] = fields["eta"];
  auto eta = text::parse_double_list(eta_s);
  if (!eta) throw ParseError("eta: expected comma-separated reals", eta_line);
  const auto& [sigma_s, sigma_line] = fields["sigma"];
  auto sigma = text::parse_double(sigma_s);
  if (!sigma) throw ParseError("sigma: expected a real", sigma_line);

  if (auto it = fields.find("K"); it != fields.end()) {
    auto k = text::parse_uint(it->second.first);
    if (!k) throw ParseError("K: expected a positive integer", it->second.second);
    if (*k != means->size()) throw ParseError("K does not match the number of means", means_line);
    if (*k != eta->size()) throw ParseError("K does not match the number of class probabilities", eta_line);
  }
  try {
    return GaussianMixtureModel(std::move(*means), *sigma, ClassDistribution(std::move(*eta)));
  } catch (const std::logic_error& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string format_model(const GaussianMixtureModel& model) {
  const std::vector<double> means(model.means().begin(), model.means().end());
  const std::vector<double> eta(model.eta().values().begin(), model.eta().values().end());
  return "K=" + std::to_string(model.num_classes()) + "\nmeans=" + text::join(means, 17) +
         "\nsigma=" + text::format_double(model.sigma(), 17) + "\neta=" + text::join(eta, 17) + "\n";
}

}  // namespace imbalab
