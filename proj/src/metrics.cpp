#include "imbalab/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "imbalab/errors.hpp"
#include "imbalab/holder.hpp"
#include "imbalab/normal.hpp"
#include "imbalab/text.hpp"

namespace imbalab {

std::string_view to_string(Provenance p) { return p == Provenance::analytic ? "analytic" : "empirical"; }

ConfusionMatrix::ConfusionMatrix(std::size_t k, std::vector<double> entries, Provenance provenance)
    : k_(k), a_(std::move(entries)), provenance_(provenance) {
  if (k < 2 || a_.size() != k * k) throw DimensionError("ConfusionMatrix: expected a square K x K matrix, K >= 2");
  double total = 0.0;
  for (double a : a_) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("ConfusionMatrix: entries must be non-negative");
    total += a;
  }
  if (std::fabs(total - 1.0) > 1e-10) throw DomainError("ConfusionMatrix: entries must sum to 1");
}

double ConfusionMatrix::row_sum(std::size_t i) const {
  double s = 0.0;
  for (std::size_t j = 0; j < k_; ++j) s += (*this)(i, j);
  return s;
}

double ConfusionMatrix::col_sum(std::size_t j) const {
  double s = 0.0;
  for (std::size_t i = 0; i < k_; ++i) s += (*this)(i, j);
  return s;
}

std::string_view to_string(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::precision_1: return "precision_1";
    case ScoreKind::recall_1: return "recall_1";
    case ScoreKind::acc: return "acc";
    case ScoreKind::a_mean: return "a_mean";
    case ScoreKind::g_mean: return "g_mean";
    case ScoreKind::h_mean: return "h_mean";
    case ScoreKind::max_r: return "max_r";
    case ScoreKind::min_r: return "min_r";
  }
  return "unknown";
}

std::optional<ScoreKind> parse_score_kind(std::string_view name) {
  name = text::trim(name);
  for (ScoreKind k : kAllScoreKinds) {
    if (name == to_string(k)) return k;
  }
  if (name == "max") return ScoreKind::max_r;
  if (name == "min") return ScoreKind::min_r;
  if (name == "accuracy") return ScoreKind::acc;
  return std::nullopt;
}

std::string score_kind_names() {
  std::string out;
  for (ScoreKind k : kAllScoreKinds) {
    if (!out.empty()) out += ",";
    out += to_string(k);
  }
  return out;
}

bool is_recall_mean(ScoreKind kind) {
  return kind != ScoreKind::precision_1 && kind != ScoreKind::recall_1 && kind != ScoreKind::acc;
}

double ScoreReport::value(ScoreKind kind) const {
  switch (kind) {
    case ScoreKind::precision_1: return precisions.at(0);
    case ScoreKind::recall_1: return recalls.at(0);
    case ScoreKind::acc: return acc;
    case ScoreKind::a_mean: return a_mean;
    case ScoreKind::g_mean: return g_mean;
    case ScoreKind::h_mean: return h_mean;
    case ScoreKind::max_r: return max_r;
    case ScoreKind::min_r: return min_r;
  }
  return 0.0;
}

namespace {

double ratio_or_one(double num, double den) { return den > 0.0 ? std::min(1.0, num / den) : 1.0; }

}  // namespace

ScoreReport scores(const ConfusionMatrix& cm) {
  const std::size_t k = cm.size();
  ScoreReport r;
  r.recalls.resize(k);
  r.precisions.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    r.recalls[i] = ratio_or_one(cm(i, i), cm.row_sum(i));
    r.precisions[i] = ratio_or_one(cm(i, i), cm.col_sum(i));
    r.acc += cm(i, i);
  }
  const auto mean = [&](double p) { return holder_mean(r.recalls, HolderSpec::uniform(k, p)); };
  r.a_mean = mean(1.0);
  r.g_mean = mean(0.0);
  r.h_mean = mean(-1.0);
  r.max_r = *std::max_element(r.recalls.begin(), r.recalls.end());
  r.min_r = *std::min_element(r.recalls.begin(), r.recalls.end());
  r.acc = std::clamp(r.acc, r.min_r, r.max_r);
  return r;
}

ConfusionMatrix true_confusion(const GaussianMixtureModel& model, const ThresholdRule& rule) {
  const std::size_t k = model.num_classes();
  if (rule.num_classes() != k) throw DimensionError("true_confusion: rule and model disagree on K");
  std::vector<double> a(k * k, 0.0);
  const double s = model.sigma();
  for (std::size_t i = 0; i < k; ++i) {
    const double eta = model.eta()[i];
    if (eta == 0.0) continue;
    const double mu = model.mean(i);
    for (std::size_t j = 0; j < k; ++j) {
      if (rule.region_empty(j)) continue;
      a[i * k + j] = eta * normal_mass((rule.lower(j) - mu) / s, (rule.upper(j) - mu) / s);
    }
  }
  return ConfusionMatrix(k, std::move(a), Provenance::analytic);
}

ConfusionMatrix rand_confusion(const ClassDistribution& eta) {
  const std::size_t k = eta.size();
  std::vector<double> a(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i * k + j] = eta[i] / static_cast<double>(k);
  }
  return ConfusionMatrix(k, std::move(a), Provenance::analytic);
}

double bayes_error(const GaussianMixtureModel& model) {
  const auto cm = true_confusion(model, bdr(model));
  double err = 0.0;
  for (std::size_t i = 0; i < cm.size(); ++i) {
    for (std::size_t j = 0; j < cm.size(); ++j) {
      if (i != j) err += cm(i, j);
    }
  }
  return err;
}

std::string format_confusion(const ConfusionMatrix& cm, int digits) {
  std::string out = "k=" + std::to_string(cm.size()) + ";provenance=" + std::string(to_string(cm.provenance())) + "\n";
  for (std::size_t i = 0; i < cm.size(); ++i) {
    for (std::size_t j = 0; j < cm.size(); ++j) {
      if (j) out += ",";
      out += text::format_double(cm(i, j), digits);
    }
    out += "\n";
  }
  return out;
}

ConfusionMatrix parse_confusion(std::string_view input) {
  std::size_t line_no = 0;
  std::size_t k = 0;
  std::optional<Provenance> provenance;
  std::vector<double> entries;
  std::size_t rows = 0;
  for (auto raw : text::split(input, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!provenance) {
      for (auto field : text::split(line, ';')) {
        const auto eq = field.find('=');
        if (eq == std::string_view::npos) throw ParseError("header: expected k=K;provenance=...", line_no);
        const auto key = text::trim(field.substr(0, eq));
        const auto value = text::trim(field.substr(eq + 1));
        if (key == "k") {
          auto parsed = text::parse_uint(value);
          if (!parsed || *parsed < 2) throw ParseError("header: k must be an integer >= 2", line_no);
          k = static_cast<std::size_t>(*parsed);
        } else if (key == "provenance") {
          if (value == "analytic") provenance = Provenance::analytic;
          else if (value == "empirical") provenance = Provenance::empirical;
          else throw ParseError("header: provenance must be analytic or empirical", line_no);
        } else {
          throw ParseError("header: unknown field '" + std::string(key) + "'", line_no);
        }
      }
      if (k == 0 || !provenance) throw ParseError("header: expected k=K;provenance=...", line_no);
      continue;
    }
    if (rows == k) throw ParseError("more than k rows", line_no);
    auto row = text::parse_double_list(line);
    if (!row) throw ParseError("row: expected comma-separated reals", line_no);
    if (row->size() != k) throw ParseError("row: expected " + std::to_string(k) + " entries", line_no);
    entries.insert(entries.end(), row->begin(), row->end());
    ++rows;
  }
  if (!provenance) throw ParseError("missing header line", line_no);
  if (rows != k) throw ParseError("expected " + std::to_string(k) + " rows, found " + std::to_string(rows), line_no);
  try {
    return ConfusionMatrix(k, std::move(entries), *provenance);
  } catch (const std::logic_error& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace imbalab
