#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "imbalab/errors.hpp"
#include "imbalab/holder.hpp"
#include "oracles.hpp"

using namespace imbalab;

namespace {
constexpr double kInf = oracle::kInf;

double mean_u(std::vector<double> v, double p) { return holder_mean(v, HolderSpec::uniform(v.size(), p)); }
}  // namespace

TEST_CASE("holder_mean examples") {
  CHECK(mean_u({0.5, 1.0}, 1.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(mean_u({4.0, 1.0}, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(mean_u({0.5, 1.0}, -1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(mean_u({0.2, 0.9, 0.5}, -kInf) == 0.2);
  CHECK(mean_u({0.2, 0.9, 0.5}, kInf) == 0.9);
}

TEST_CASE("pythagorean means") {
  auto m = pythagorean_means(std::vector<double>{1, 1, 1}, std::vector<double>(3, 1.0 / 3));
  CHECK(m.arithmetic == doctest::Approx(1.0));
  CHECK(m.geometric == doctest::Approx(1.0));
  CHECK(m.harmonic == doctest::Approx(1.0));
  m = pythagorean_means(std::vector<double>{0.5, 1.0}, std::vector<double>{0.5, 0.5});
  CHECK(m.arithmetic == doctest::Approx(0.75));
  CHECK(m.geometric == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(m.harmonic == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  m = pythagorean_means(std::vector<double>{2, 8}, std::vector<double>{0.5, 0.5});
  CHECK(m.arithmetic == doctest::Approx(5.0));
  CHECK(m.geometric == doctest::Approx(4.0));
  CHECK(m.harmonic == doctest::Approx(3.2));
}

TEST_CASE("zero values follow the limit convention") {
  CHECK(mean_u({0.0, 1.0}, 1.0) == doctest::Approx(0.5));
  CHECK(mean_u({0.0, 1.0}, 2.0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(mean_u({0.0, 1.0}, 0.0) == 0.0);
  CHECK(mean_u({0.0, 1.0}, -1.0) == 0.0);
  CHECK(mean_u({0.0, 1.0}, -kInf) == 0.0);
}

TEST_CASE("zero-weight entries are ignored, including in the extreme limits") {
  HolderSpec spec(kInf, {0.0, 0.5, 0.5});
  CHECK(holder_mean(std::vector<double>{0.99, 0.3, 0.4}, spec) == 0.4);
  HolderSpec lo(-kInf, {0.0, 0.5, 0.5});
  CHECK(holder_mean(std::vector<double>{0.01, 0.3, 0.4}, lo) == 0.3);
  HolderSpec geo(0.0, {0.0, 0.5, 0.5});
  CHECK(holder_mean(std::vector<double>{0.0, 0.25, 1.0}, geo) == doctest::Approx(0.5));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(HolderSpec(std::nan(""), {1.0}), DomainError);
  CHECK_THROWS_AS(HolderSpec(1.0, {}), DomainError);
  CHECK_THROWS_AS(HolderSpec(1.0, {0.6, 0.6}), DomainError);
  CHECK_THROWS_AS(HolderSpec(1.0, {1.5, -0.5}), DomainError);
  CHECK_THROWS_AS(holder_mean(std::vector<double>{1.0}, HolderSpec::uniform(2, 1.0)), DimensionError);
  CHECK_THROWS_AS(mean_u({-0.1, 1.0}, 1.0), DomainError);
  CHECK_THROWS_AS(mean_u({std::nan(""), 1.0}, 1.0), DomainError);
}

TEST_CASE("large exponents do not overflow") {
  CHECK(mean_u({1e-3, 0.5}, 1000.0) == doctest::Approx(0.5 * std::pow(0.5, 1e-3)).epsilon(1e-12));
  CHECK(mean_u({1e-3, 0.5}, -1000.0) == doctest::Approx(1e-3 * std::pow(0.5, -1e-3)).epsilon(1e-12));
  CHECK(mean_u({1e200, 1e300}, 5.0) > 1e299);
}

TEST_CASE("property: monotone in p, bounded, fixed point, matches textbook formula") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> val(0.01, 1.0);
  std::uniform_int_distribution<int> len(1, 6);
  const std::vector<double> ps{-kInf, -50, -5, -1, -1e-9, 0, 1e-9, 1, 5, 50, kInf};
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = len(gen);
    std::vector<double> a(k), w(k);
    double tot = 0;
    for (int i = 0; i < k; ++i) {
      a[i] = val(gen);
      w[i] = val(gen);
      tot += w[i];
    }
    for (double& x : w) x /= tot;
    w[0] += 1.0 - std::accumulate(w.begin(), w.end(), 0.0);
    const double lo = *std::min_element(a.begin(), a.end());
    const double hi = *std::max_element(a.begin(), a.end());
    double prev = -kInf;
    for (double p : ps) {
      const double m = holder_mean(a, HolderSpec(p, w));
      CHECK(m >= prev - 1e-12);
      CHECK(m >= lo);
      CHECK(m <= hi);
      if (p == 0 || (std::fabs(p) >= 1 && std::fabs(p) <= 5)) CHECK(m == doctest::Approx(oracle::power_mean(a, w, p)).epsilon(1e-12));
      prev = m;
    }
    const double m0 = holder_mean(a, HolderSpec(0.0, w));
    CHECK(std::fabs(holder_mean(a, HolderSpec(1e-9, w)) - m0) < 1e-6);
    CHECK(std::fabs(holder_mean(a, HolderSpec(-1e-9, w)) - m0) < 1e-6);
    const std::vector<double> same(k, a[0]);
    for (double p : ps) CHECK(holder_mean(same, HolderSpec(p, w)) == doctest::Approx(a[0]).epsilon(1e-14));
  }
}

TEST_CASE("property: |p| = 50 sits within the weight-determined distance of max and min") {
  // For uniform weights 1/k the sharp bounds are hi * k^(-1/50) <= M_50 and M_-50 <= lo * k^(1/50).
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> val(0.5, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> a{val(gen), val(gen), val(gen)};
    const double hi = *std::max_element(a.begin(), a.end());
    const double lo = *std::min_element(a.begin(), a.end());
    CHECK(mean_u(a, 50.0) >= hi * std::pow(3.0, -1.0 / 50.0) - 1e-15);
    CHECK(mean_u(a, -50.0) <= lo * std::pow(3.0, 1.0 / 50.0) + 1e-15);
    CHECK(mean_u(a, 50.0) <= hi);
    CHECK(mean_u(a, -50.0) >= lo);
    CHECK(hi - mean_u(a, 5000.0) < 1e-3);
    CHECK(mean_u(a, -5000.0) - lo < 1e-3);
  }
  // A gap of about 1.4% at |p| = 50 is unavoidable for (0.5, 1).
  CHECK(mean_u({0.5, 1.0}, 50.0) == doctest::Approx(std::pow(0.5, 1.0 / 50.0) * std::pow(1.0 + std::pow(0.5, 50.0), 1.0 / 50.0)));
}

TEST_CASE("strict inequality when values differ") {
  std::vector<double> a{0.3, 0.6};
  CHECK(mean_u(a, -1) < mean_u(a, 0));
  CHECK(mean_u(a, 0) < mean_u(a, 1));
  CHECK(mean_u(a, 1) < mean_u(a, 5));
}
