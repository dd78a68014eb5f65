#include <cmath>
#include <random>

#include "doctest.h"
#include "imbalab/errors.hpp"
#include "imbalab/rules.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace imbalab;

namespace {
constexpr double kInf = oracle::kInf;

using fixtures::example3;
using fixtures::random_model;
}  // namespace

TEST_CASE("ThresholdRule") {
  ThresholdRule r({4.0, 5.5});
  CHECK(r.num_classes() == 3);
  CHECK(r.lower(0) == -kInf);
  CHECK(r.upper(2) == kInf);
  CHECK(classify(r, 3.0) == 0);
  CHECK(classify(r, 4.0) == 0);
  CHECK(classify(r, 4.0000001) == 1);
  CHECK(classify(r, 10.0) == 2);
  CHECK_THROWS_AS(ThresholdRule({}), DomainError);
  CHECK_THROWS_AS(ThresholdRule({2.0, 1.0}), DomainError);
  CHECK_THROWS_AS(ThresholdRule({std::nan("")}), DomainError);
  auto c = ThresholdRule::constant(3, 0);
  CHECK(classify(c, 1e300) == 0);
  CHECK(c.region_empty(1));
  CHECK(c.region_empty(2));
  auto last = ThresholdRule::constant(3, 2);
  CHECK(classify(last, -1e300) == 2);
}

TEST_CASE("bdr examples") {
  auto b = bdr(GaussianMixtureModel({0, 2}, 1.0, ClassDistribution::uniform(2)));
  CHECK(b.cuts()[0] == 1.0);
  auto b2 = bdr(GaussianMixtureModel({0, 2}, 1.0, ClassDistribution({0.9, 0.1})));
  CHECK(b2.cuts()[0] == doctest::Approx(1.0 + std::log(9.0) / 2.0).epsilon(1e-15));
  auto b3 = bdr(example3());
  CHECK(b3.cuts()[0] == doctest::Approx(4.0 + 0.25 * std::log(2.0) / 2.0).epsilon(1e-15));
  CHECK(b3.cuts()[1] == doctest::Approx(5.5 + 0.25 * std::log(3.0) / 1.0).epsilon(1e-15));
  // dense argmax scan at step 1e-4
  auto tr = oracle::scan_transitions({3, 5, 6}, 0.5, {0.6, 0.3, 0.1}, 0.0, 9.0, 1e-4);
  REQUIRE(tr.size() == 2);
  CHECK(std::fabs(tr[0].first - b3.cuts()[0]) < 1e-4);
  CHECK(std::fabs(tr[1].first - b3.cuts()[1]) < 1e-4);
}

TEST_CASE("edr examples") {
  auto e = edr(example3());
  CHECK(e.cuts()[0] == 4.0);
  CHECK(e.cuts()[1] == 5.5);
  CHECK(edr(GaussianMixtureModel({0, 2}, 1.0, ClassDistribution({0.9, 0.1}))).cuts()[0] == 1.0);
  for (double d : {0.01, 0.5, 3.0, 10.0}) {
    CHECK(edr(delta_family(2, d, ClassDistribution({0.2, 0.8}))).cuts()[0] == doctest::Approx(d / 2).epsilon(1e-15));
  }
}

TEST_CASE("envelope drops dominated and zero-weight classes") {
  // A tiny middle prior is swallowed by its neighbours.
  auto b = bdr(GaussianMixtureModel({0, 1, 2}, 1.0, ClassDistribution({0.495, 0.01, 0.495})));
  CHECK(b.region_empty(1));
  CHECK(b.cuts()[0] == doctest::Approx(1.0));
  auto z = bdr(GaussianMixtureModel({0, 1, 2}, 1.0, ClassDistribution({0.0, 0.5, 0.5})));
  CHECK(z.region_empty(0));
  CHECK(z.cuts()[1] == doctest::Approx(1.5));
  auto only = bdr(GaussianMixtureModel({0, 2}, 1.0, ClassDistribution({1.0, 0.0})));
  CHECK(only.cuts()[0] == kInf);
  CHECK(classify(only, 100.0) == 0);
}

TEST_CASE("pairwise boundary") {
  CHECK(pairwise_boundary(0, 2, 1, 0.5, 0.5) == 1.0);
  CHECK(pairwise_boundary(3, 5, 0.5, 0.6, 0.3) == doctest::Approx(4.0 + 0.25 * std::log(2.0) / 2.0));
}

TEST_CASE("inverse-prior costs") {
  auto c = inverse_prior_costs(ClassDistribution({0.6, 0.3, 0.1}));
  CHECK(c(0, 1) == doctest::Approx(2.0));
  CHECK(c(0, 2) == doctest::Approx(6.0));
  CHECK(c(2, 0) == doctest::Approx(1.0 / 6.0));
  auto u = inverse_prior_costs(ClassDistribution::uniform(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(u(i, j) == 1.0);
  auto b = inverse_prior_costs(ClassDistribution({0.9, 0.1}));
  CHECK(b(0, 1) == doctest::Approx(9.0));
  CHECK(b(1, 0) == doctest::Approx(1.0 / 9.0));
  CHECK_THROWS_AS(inverse_prior_costs(ClassDistribution({1.0, 0.0})), DomainError);
}

TEST_CASE("cost matrix validation") {
  CHECK_THROWS_AS(CostMatrix(2, {0, 1, 1}), DimensionError);
  CHECK_THROWS_AS(CostMatrix(2, {0, 0, 1, 0}), DomainError);
  CHECK_THROWS_AS(CostMatrix(2, {-1, 1, 1, 0}), DomainError);
  CHECK_NOTHROW(CostMatrix(2, {0, 1, 1, 0}));
}

TEST_CASE("cs_bdr") {
  auto m = example3();
  auto cs = cs_bdr(m, inverse_prior_costs(m.eta()));
  CHECK(cs.cuts()[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(cs.cuts()[1] == doctest::Approx(5.5).epsilon(1e-14));
  auto ones = cs_bdr(m, CostMatrix(3, std::vector<double>(9, 1.0)));
  CHECK(ones.cuts()[0] == doctest::Approx(bdr(m).cuts()[0]).epsilon(1e-15));
  CHECK(ones.cuts()[1] == doctest::Approx(bdr(m).cuts()[1]).epsilon(1e-15));
}

TEST_CASE("rule text format") {
  ThresholdRule r({-kInf, 4.0866, kInf});
  CHECK(format_rule(r) == "cuts=-inf,4.0866,inf");
  CHECK(parse_rule("cuts=-inf,4.0866,inf") == r);
  CHECK(parse_rule("4, 5.5") == ThresholdRule({4.0, 5.5}));
  CHECK_THROWS_AS(parse_rule("cuts=5,4"), ParseError);
  CHECK_THROWS_AS(parse_rule("cuts=a"), ParseError);
}

TEST_CASE("property: bdr matches dense argmax, invariances") {
  std::mt19937_64 gen(99);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 2 + t % 4;
    auto m = random_model(gen, k, true);
    const std::vector<double> mu(m.means().begin(), m.means().end());
    const std::vector<double> eta(m.eta().values().begin(), m.eta().values().end());
    auto rule = bdr(m);
    std::uniform_real_distribution<double> xs(mu.front() - 4 * m.sigma(), mu.back() + 4 * m.sigma());
    for (int i = 0; i < 2000; ++i) {
      const double x = xs(gen);
      CHECK(classify(rule, x) == oracle::argmax_class(mu, m.sigma(), eta, x));
    }
    // eta = e gives the edr exactly
    auto bal = m.with_eta(ClassDistribution::uniform(k));
    CHECK(bdr(bal) == edr(m));
    // translation
    std::vector<double> shifted = mu;
    for (double& v : shifted) v += 1.75;
    auto moved = bdr(GaussianMixtureModel(shifted, m.sigma(), m.eta()));
    for (std::size_t c = 0; c + 1 < k; ++c) {
      if (std::isfinite(rule.cuts()[c])) CHECK(moved.cuts()[c] == doctest::Approx(rule.cuts()[c] + 1.75).epsilon(1e-12));
      else CHECK(moved.cuts()[c] == rule.cuts()[c]);
    }
  }
}

TEST_CASE("property: cs_bdr with inverse-prior costs is the edr") {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 100; ++t) {
    auto m = random_model(gen, 2 + t % 4);
    auto cs = cs_bdr(m, inverse_prior_costs(m.eta()));
    auto e = edr(m);
    for (std::size_t c = 0; c < e.cuts().size(); ++c) CHECK(std::fabs(cs.cuts()[c] - e.cuts()[c]) <= 1e-12);
  }
}
