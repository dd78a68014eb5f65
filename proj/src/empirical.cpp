#include "imbalab/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "imbalab/errors.hpp"
#include "imbalab/normal.hpp"
#include "imbalab/rng.hpp"
#include "imbalab/text.hpp"

namespace imbalab {

namespace {

std::string describe(std::span<const double> means, std::span<const double> sigmas, const ClassDistribution& eta) {
  std::vector<double> m(means.begin(), means.end());
  std::vector<double> s(sigmas.begin(), sigmas.end());
  std::vector<double> e(eta.values().begin(), eta.values().end());
  return "means=" + text::join(m) + " sigma=" + text::join(s) + " eta=" + text::join(e);
}

LabeledSample draw(std::span<const double> means, std::span<const double> sigmas, const ClassDistribution& eta,
                   std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("sample: n must be at least 1");
  const std::size_t k = eta.size();
  std::vector<double> cumulative(k);
  std::partial_sum(eta.values().begin(), eta.values().end(), cumulative.begin());
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (eta[i] > 0.0) last_positive = i;
  }

  LabeledSample out;
  out.num_classes = k;
  out.seed = seed;
  out.records.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double uc = SplitMix64::to_open_unit(SplitMix64::at(seed, 2 * r));
    const double ux = SplitMix64::to_open_unit(SplitMix64::at(seed, 2 * r + 1));
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), uc);
    const std::size_t label = std::min<std::size_t>(it - cumulative.begin(), last_positive);
    out.records[r] = {means[label] + sigmas[label] * normal_quantile(ux), label};
  }
  return out;
}

std::vector<std::vector<std::size_t>> indices_by_class(const LabeledSample& s, const char* op) {
  std::vector<std::vector<std::size_t>> by_class(s.num_classes);
  for (std::size_t r = 0; r < s.records.size(); ++r) by_class[s.records[r].label].push_back(r);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    if (by_class[c].empty()) {
      throw DomainError(std::string(op) + ": class " + std::to_string(c + 1) + " has no records");
    }
  }
  return by_class;
}

}  // namespace

std::vector<std::size_t> LabeledSample::class_counts() const {
  std::vector<std::size_t> counts(num_classes, 0);
  for (const auto& r : records) ++counts[r.label];
  return counts;
}

LabeledSample sample(const GaussianMixtureModel& model, std::size_t n, std::uint64_t seed) {
  const std::vector<double> sigmas(model.num_classes(), model.sigma());
  auto out = draw(model.means(), sigmas, model.eta(), n, seed);
  out.source = describe(model.means(), std::span<const double>(&sigmas[0], 1), model.eta());
  return out;
}

LabeledSample sample(std::span<const double> means, std::span<const double> sigmas, const ClassDistribution& eta,
                     std::size_t n, std::uint64_t seed) {
  if (means.size() != eta.size() || sigmas.size() != eta.size()) {
    throw DimensionError("sample: means, sigmas and eta must have the same length");
  }
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (!std::isfinite(means[i])) throw DomainError("sample: means must be finite");
    if (!(sigmas[i] > 0.0) || !std::isfinite(sigmas[i])) throw DomainError("sample: sigmas must be positive");
  }
  auto out = draw(means, sigmas, eta, n, seed);
  out.source = describe(means, sigmas, eta);
  return out;
}

LabeledSample ros(const LabeledSample& in, std::uint64_t seed) {
  const auto by_class = indices_by_class(in, "ros");
  std::size_t target = 0;
  for (const auto& idx : by_class) target = std::max(target, idx.size());

  LabeledSample out = in;
  out.seed = seed;
  out.records.reserve(target * in.num_classes);
  SplitMix64 rng(seed);
  for (const auto& idx : by_class) {
    for (std::size_t extra = idx.size(); extra < target; ++extra) {
      out.records.push_back(in.records[idx[rng.next_below(idx.size())]]);
    }
  }
  return out;
}

LabeledSample rus(const LabeledSample& in, std::uint64_t seed) {
  auto by_class = indices_by_class(in, "rus");
  std::size_t target = in.records.size();
  for (const auto& idx : by_class) target = std::min(target, idx.size());

  SplitMix64 rng(seed);
  std::vector<std::size_t> keep;
  keep.reserve(target * in.num_classes);
  for (auto& idx : by_class) {
    // Partial Fisher-Yates: the first `target` slots become a uniform subset.
    for (std::size_t i = 0; i < target && idx.size() > target; ++i) {
      const std::size_t j = i + rng.next_below(idx.size() - i);
      std::swap(idx[i], idx[j]);
    }
    keep.insert(keep.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(target));
  }
  std::sort(keep.begin(), keep.end());

  LabeledSample out;
  out.num_classes = in.num_classes;
  out.seed = seed;
  out.source = in.source;
  out.records.reserve(keep.size());
  for (std::size_t r : keep) out.records.push_back(in.records[r]);
  return out;
}

PluginFit fit_plugin(const LabeledSample& s, std::optional<double> sigma_known) {
  const std::size_t k = s.num_classes;
  if (k < 2) throw EstimationError("fit: at least two classes are required");
  if (sigma_known && !(*sigma_known > 0.0 && std::isfinite(*sigma_known))) {
    throw DomainError("fit: known sigma must be positive");
  }
  const std::size_t min_count = sigma_known ? 1 : 2;
  std::vector<double> sum(k, 0.0);
  std::vector<std::size_t> count(k, 0);
  for (const auto& r : s.records) {
    sum[r.label] += r.x;
    ++count[r.label];
  }
  std::vector<double> mean(k);
  for (std::size_t c = 0; c < k; ++c) {
    if (count[c] < min_count) {
      throw EstimationError("fit: class " + std::to_string(c + 1) + " has " + std::to_string(count[c]) +
                            " record(s), need " + std::to_string(min_count));
    }
    mean[c] = sum[c] / static_cast<double>(count[c]);
    if (c > 0 && !(mean[c] > mean[c - 1])) {
      throw EstimationError("fit: fitted class means are not strictly increasing in class order");
    }
  }

  double sigma = 0.0;
  if (sigma_known) {
    sigma = *sigma_known;
  } else {
    double ss = 0.0;
    for (const auto& r : s.records) ss += (r.x - mean[r.label]) * (r.x - mean[r.label]);
    sigma = std::sqrt(ss / static_cast<double>(s.records.size() - k));
    if (!(sigma > 0.0)) throw EstimationError("fit: pooled standard deviation is zero");
  }

  std::vector<double> eta(k);
  const double n = static_cast<double>(s.records.size());
  for (std::size_t c = 0; c < k; ++c) eta[c] = static_cast<double>(count[c]) / n;
  // Frequencies can miss 1 by an ulp or two; put the slack on the largest class.
  const auto big = std::max_element(eta.begin(), eta.end());
  *big = 1.0 - (std::accumulate(eta.begin(), eta.end(), 0.0) - *big);

  GaussianMixtureModel model(std::move(mean), sigma, ClassDistribution(std::move(eta)));
  auto rule = bdr(model);
  return {std::move(model), std::move(rule)};
}

ThresholdRule fit_plugin_rule(const LabeledSample& s, std::optional<double> sigma_known) {
  return fit_plugin(s, sigma_known).rule;
}

ConfusionMatrix empirical_confusion(const LabeledSample& s, const ThresholdRule& rule, Execution exec) {
  if (s.records.empty()) throw DomainError("empirical_confusion: empty sample");
  const std::size_t k = s.num_classes;
  if (rule.num_classes() != k) throw DimensionError("empirical_confusion: rule and sample class counts differ");

  std::vector<std::uint64_t> counts(k * k, 0);
  const auto n = static_cast<std::ptrdiff_t>(s.records.size());
  if (exec == Execution::serial) {
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      ++counts[s.records[r].label * k + classify(rule, s.records[r].x)];
    }
  } else {
#pragma omp parallel
    {
      std::vector<std::uint64_t> local(k * k, 0);
#pragma omp for schedule(static) nowait
      for (std::ptrdiff_t r = 0; r < n; ++r) {
        ++local[s.records[r].label * k + classify(rule, s.records[r].x)];
      }
#pragma omp critical(imbalab_confusion_merge)
      for (std::size_t i = 0; i < local.size(); ++i) counts[i] += local[i];
    }
  }

  std::vector<double> a(k * k);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  return ConfusionMatrix(k, std::move(a), Provenance::empirical);
}

std::string format_sample(const LabeledSample& s, int digits) {
  std::string out = "# sample: classes=" + std::to_string(s.num_classes) + " n=" + std::to_string(s.records.size()) +
                    " seed=" + std::to_string(s.seed) + "\n";
  if (!s.source.empty()) out += "# source: " + s.source + "\n";
  out += "x,class\n";
  for (const auto& r : s.records) {
    out += text::format_double(r.x, digits);
    out += ',';
    out += std::to_string(r.label + 1);
    out += '\n';
  }
  return out;
}

LabeledSample parse_sample(std::string_view text_in) {
  LabeledSample out;
  std::size_t declared = 0;
  std::size_t max_label = 0;
  bool header_seen = false;
  std::size_t line_no = 0;
  for (auto raw : text::split(text_in, '\n')) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.rfind("# sample:", 0) == 0) {
        for (auto item : text::split(line.substr(9), ' ')) {
          item = text::trim(item);
          if (item.rfind("classes=", 0) == 0) {
            auto v = text::parse_uint(item.substr(8));
            if (!v || *v < 2) throw ParseError("classes: expected an integer >= 2", line_no);
            declared = *v;
          } else if (item.rfind("seed=", 0) == 0) {
            auto v = text::parse_uint(item.substr(5));
            if (!v) throw ParseError("seed: expected an unsigned integer", line_no);
            out.seed = *v;
          }
        }
      } else if (line.rfind("# source:", 0) == 0) {
        out.source = std::string(text::trim(line.substr(9)));
      }
      continue;
    }
    if (!header_seen) {
      if (line != "x,class") throw ParseError("expected header 'x,class'", line_no);
      header_seen = true;
      continue;
    }
    const auto fields = text::split(line, ',');
    if (fields.size() != 2) throw ParseError("expected 'x,class'", line_no);
    const auto x = text::parse_double(text::trim(fields[0]));
    if (!x || !std::isfinite(*x)) throw ParseError("x: expected a finite real", line_no);
    const auto c = text::parse_uint(text::trim(fields[1]));
    if (!c || *c == 0) throw ParseError("class: expected a positive integer", line_no);
    if (declared && *c > declared) throw ParseError("class index exceeds declared class count", line_no);
    max_label = std::max<std::size_t>(max_label, *c);
    out.records.push_back({*x, static_cast<std::size_t>(*c - 1)});
  }
  if (!header_seen) throw ParseError("missing header 'x,class'", 0);
  out.num_classes = declared ? declared : max_label;
  if (out.num_classes < 2) throw ParseError("sample needs at least two classes", 0);
  return out;
}

}  // namespace imbalab
