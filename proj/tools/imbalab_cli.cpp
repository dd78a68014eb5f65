// imbalab command-line front end. Every subcommand writes CSV (or a rule line)
// preceded by a `#` manifest recording the resolved parameters.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "CLI11.hpp"
#include "imbalab/bounds.hpp"
#include "imbalab/empirical.hpp"
#include "imbalab/errors.hpp"
#include "imbalab/influence.hpp"
#include "imbalab/metrics.hpp"
#include "imbalab/model.hpp"
#include "imbalab/rules.hpp"
#include "imbalab/search.hpp"
#include "imbalab/text.hpp"

using namespace imbalab;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kNumeric = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  void add(const std::string& key, const std::string& value) { params_.emplace_back(key, value); }
  void add(const std::string& key, double value) { add(key, text::format_double(value)); }

  std::string render() const {
    std::string out = "# imbalab " IMBALAB_VERSION "\n# command: " + command_ + "\n";
    for (const auto& [k, v] : params_) out += "# " + k + "=" + v + "\n";
    return out;
  }

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> params_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a sibling temporary file and a rename, so readers never see a partial file.
void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  const std::string tmp = out_path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out << content;
    if (!out.flush()) throw std::runtime_error("write to '" + tmp + "' failed");
  }
  std::filesystem::rename(tmp, out_path);
}

std::vector<ScoreKind> parse_kinds(const std::string& list) {
  std::vector<ScoreKind> kinds;
  for (auto item : text::split(list, ',')) {
    auto name = text::trim(item);
    auto kind = parse_score_kind(name);
    if (!kind) {
      throw UsageError("unknown score '" + std::string(name) + "'; valid scores: " + score_kind_names() +
                       " (aliases: max, min, accuracy)");
    }
    kinds.push_back(*kind);
  }
  if (kinds.empty()) throw UsageError("no score given");
  return kinds;
}

std::vector<double> parse_range(const std::string& spec, const char* what) {
  const auto parts = text::split(spec, ':');
  if (parts.size() != 3) throw UsageError(std::string(what) + " must look like A:B:STEP");
  std::array<double, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) {
    auto x = text::parse_double(text::trim(parts[i]));
    if (!x || !std::isfinite(*x)) throw UsageError(std::string(what) + ": '" + std::string(parts[i]) + "' is not a real");
    v[i] = *x;
  }
  try {
    return uniform_grid(v[0], v[1], v[2]);
  } catch (const DomainError& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

double parse_real_arg(const std::string& s, const char* what) {
  auto x = text::parse_double(text::trim(s));
  if (!x) throw UsageError(std::string(what) + ": '" + s + "' is not a real");
  return *x;
}

ThresholdRule resolve_rule(const std::string& spec, const GaussianMixtureModel& model) {
  if (spec == "bdr") return bdr(model);
  if (spec == "edr") return edr(model);
  if (spec.rfind("cuts=", 0) == 0) {
    auto rule = parse_rule(spec);
    if (rule.num_classes() != model.num_classes()) {
      throw UsageError("--rule has " + std::to_string(rule.num_classes()) + " regions but the model has " +
                       std::to_string(model.num_classes()) + " classes");
    }
    return rule;
  }
  throw UsageError("--rule must be bdr, edr or cuts=c1,c2,...");
}

std::string scores_csv(const ScoreReport& r) {
  std::string out = "score,class,value\n";
  for (std::size_t i = 0; i < r.recalls.size(); ++i) {
    out += "precision," + std::to_string(i + 1) + "," + text::format_double(r.precisions[i]) + "\n";
  }
  for (std::size_t i = 0; i < r.recalls.size(); ++i) {
    out += "recall," + std::to_string(i + 1) + "," + text::format_double(r.recalls[i]) + "\n";
  }
  for (ScoreKind k : {ScoreKind::acc, ScoreKind::a_mean, ScoreKind::g_mean, ScoreKind::h_mean, ScoreKind::max_r,
                      ScoreKind::min_r}) {
    out += std::string(to_string(k)) + ",," + text::format_double(r.value(k)) + "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"imbalab: Hoelder-mean scores, Bayes-type rules and class imbalance on Gaussian mixtures"};
  app.require_subcommand(1);
  app.set_version_flag("--version", IMBALAB_VERSION);
  std::string out_path;

  // scores
  auto* sc = app.add_subcommand("scores", "All table scores for a rule on a model, or for a confusion matrix");
  std::string sc_model, sc_rule, sc_conf;
  auto* sc_m = sc->add_option("--model", sc_model, "Model file");
  sc->add_option("--rule", sc_rule, "bdr | edr | cuts=c1,c2,...");
  auto* sc_c = sc->add_option("--confusion", sc_conf, "Confusion matrix file");
  sc_m->excludes(sc_c);

  // influence
  auto* in = app.add_subcommand("influence", "Influence function over a parameter grid");
  std::size_t in_k = 2;
  std::string in_scores = "acc,a_mean,g_mean,h_mean,max_r,min_r", in_grid;
  double in_tol = kDefaultInfluenceTol;
  bool in_serial = false;
  in->add_option("--K", in_k, "Number of classes")->check(CLI::Range(2, 64));
  in->add_option("--scores", in_scores, "Comma-separated score names");
  in->add_option("--grid", in_grid, "A:B:STEP over eta_1 (K = 2) or epsilon (K > 2)");
  in->add_option("--tol", in_tol, "Absolute quadrature tolerance per node")->check(CLI::PositiveNumber);
  in->add_flag("--serial", in_serial, "Evaluate nodes on one thread");

  // bounds
  auto* bo = app.add_subcommand("bounds", "Competitiveness bounds over a range of exponents");
  std::size_t bo_k = 2;
  std::string bo_range = "-50:50:0.5";
  bo->add_option("--K", bo_k, "Number of classes")->required()->check(CLI::Range(2, 1000000));
  bo->add_option("--p-range", bo_range, "A:B:STEP");

  // verdict
  auto* ve = app.add_subcommand("verdict", "SUPERIOR / INDETERMINATE / INFERIOR for a score value");
  std::size_t ve_k = 2;
  std::string ve_p, ve_value;
  ve->add_option("--K", ve_k, "Number of classes")->required()->check(CLI::Range(2, 1000000));
  ve->add_option("--p", ve_p, "Hoelder exponent (inf and -inf allowed)")->required()->allow_extra_args(false);
  ve->add_option("--value", ve_value, "Score value in [0, 1]")->required();

  // search
  auto* se = app.add_subcommand("search", "Score-optimal threshold rule (K = 2 or 3)");
  std::string se_model, se_scores;
  SearchOptions se_opts;
  bool se_serial = false;
  se->add_option("--model", se_model, "Model file")->required();
  se->add_option("--score", se_scores, "Score name (or comma-separated list)")->required();
  se->add_option("--grid-step", se_opts.grid_step, "Coarse grid spacing (default 0.01 sigma)")->check(CLI::NonNegativeNumber);
  se->add_option("--refine-tol", se_opts.refine_tol, "Refinement resolution (default 1e-6 sigma)")->check(CLI::NonNegativeNumber);
  se->add_flag("--serial", se_serial, "Scan the grid on one thread");

  // sample
  auto* sa = app.add_subcommand("sample", "Draw a labelled sample from a model");
  std::string sa_model;
  std::size_t sa_n = 0;
  std::uint64_t sa_seed = 0;
  sa->add_option("--model", sa_model, "Model file")->required();
  sa->add_option("--n", sa_n, "Number of records")->required()->check(CLI::PositiveNumber);
  sa->add_option("--seed", sa_seed, "Seed")->required();

  // rebalance
  auto* rb = app.add_subcommand("rebalance", "Random over- or under-sampling of a sample file");
  std::string rb_in, rb_method;
  std::uint64_t rb_seed = 0;
  rb->add_option("--in", rb_in, "Sample file")->required();
  rb->add_option("--method", rb_method, "ros | rus")->required()->check(CLI::IsMember({"ros", "rus"}));
  rb->add_option("--seed", rb_seed, "Seed")->required();

  // fit
  auto* fi = app.add_subcommand("fit", "Plug-in Bayes rule fitted to a sample file");
  std::string fi_in;
  std::optional<double> fi_sigma;
  fi->add_option("--in", fi_in, "Sample file")->required();
  fi->add_option("--sigma", fi_sigma, "Known common standard deviation")->check(CLI::PositiveNumber);

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("-o,--out", out_path, "Write the result here (atomically) instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    std::string body;
    Manifest man(app.get_subcommands().front()->get_name());

    if (*sc) {
      if (sc_model.empty() == sc_conf.empty()) throw UsageError("scores: give exactly one of --model or --confusion");
      if (!sc_model.empty()) {
        if (sc_rule.empty()) throw UsageError("scores: --model requires --rule");
        man.add("model", sc_model);
        man.add("rule", sc_rule);
        const auto model = parse_model(read_file(sc_model));
        const auto rule = resolve_rule(sc_rule, model);
        man.add("resolved_rule", format_rule(rule).substr(5));
        body = scores_csv(scores(true_confusion(model, rule)));
      } else {
        if (!sc_rule.empty()) throw UsageError("scores: --rule only applies with --model");
        man.add("confusion", sc_conf);
        body = scores_csv(scores(parse_confusion(read_file(sc_conf))));
      }
    } else if (*in) {
      const auto kinds = parse_kinds(in_scores);
      std::vector<double> grid;
      if (in_grid.empty()) {
        grid = default_grid(in_k);
      } else {
        grid = parse_range(in_grid, "--grid");
        const auto [lo, hi] = parameter_range(in_k);
        if (grid.front() < lo || grid.back() > hi) {
          throw UsageError("--grid leaves the legal range [" + text::format_double(lo) + ", " +
                           text::format_double(hi) + "]");
        }
      }
      man.add("K", std::to_string(in_k));
      man.add("scores", in_scores);
      man.add("grid", in_grid.empty() ? "default" : in_grid);
      man.add("tol", in_tol);
      body = format_influence_csv(sweep(kinds, in_k, grid, in_tol, in_serial ? Execution::serial : Execution::parallel));
    } else if (*bo) {
      const auto ps = parse_range(bo_range, "--p-range");
      man.add("K", std::to_string(bo_k));
      man.add("p-range", bo_range);
      body = format_bounds_csv(bo_k, bounds_table(bo_k, ps));
    } else if (*ve) {
      const double p = parse_real_arg(ve_p, "--p");
      const double value = parse_real_arg(ve_value, "--value");
      if (std::isnan(p)) throw UsageError("--p must not be NaN");
      if (!(value >= 0.0 && value <= 1.0)) throw UsageError("--value must lie in [0, 1]");
      man.add("K", std::to_string(ve_k));
      man.add("p", p);
      man.add("value", value);
      const auto v = verdict(value, ve_k, p);
      body = "K,p,value,s_inf,s_sup,verdict\n" + std::to_string(v.k) + "," + text::format_double(v.p) + "," +
             text::format_double(value) + "," + text::format_double(v.s_inf) + "," + text::format_double(v.s_sup) +
             "," + std::string(to_string(v.band)) + "\n";
    } else if (*se) {
      const auto kinds = parse_kinds(se_scores);
      const auto model = parse_model(read_file(se_model));
      se_opts.exec = se_serial ? Execution::serial : Execution::parallel;
      man.add("model", se_model);
      man.add("score", se_scores);
      man.add("grid_step", se_opts.grid_step > 0 ? se_opts.grid_step : 0.01 * model.sigma());
      man.add("refine_tol", se_opts.refine_tol > 0 ? se_opts.refine_tol : 1e-6 * model.sigma());
      std::vector<SearchResult> results;
      for (ScoreKind k : kinds) results.push_back(optimize_rule(model, k, se_opts));
      body = format_search_csv(results);
    } else if (*sa) {
      const auto model = parse_model(read_file(sa_model));
      man.add("model", sa_model);
      man.add("n", std::to_string(sa_n));
      man.add("seed", std::to_string(sa_seed));
      body = format_sample(sample(model, sa_n, sa_seed));
    } else if (*rb) {
      const auto s = parse_sample(read_file(rb_in));
      man.add("in", rb_in);
      man.add("method", rb_method);
      man.add("seed", std::to_string(rb_seed));
      body = format_sample(rb_method == "ros" ? ros(s, rb_seed) : rus(s, rb_seed));
    } else if (*fi) {
      const auto s = parse_sample(read_file(fi_in));
      man.add("in", fi_in);
      if (fi_sigma) man.add("sigma", *fi_sigma);
      const auto fit = fit_plugin(s, fi_sigma);
      const std::vector<double> eta(fit.model.eta().values().begin(), fit.model.eta().values().end());
      const std::vector<double> means(fit.model.means().begin(), fit.model.means().end());
      body = "# fitted means=" + text::join(means) + " sigma=" + text::format_double(fit.model.sigma()) +
             " eta=" + text::join(eta) + "\n" + format_rule(fit.rule) + "\n";
    }

    emit(out_path, man.render() + body);
    return kOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedDimensionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
}
