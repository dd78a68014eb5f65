#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "imbalab/empirical.hpp"
#include "imbalab/errors.hpp"
#include "imbalab/rng.hpp"

using namespace imbalab;

namespace {
LabeledSample with_counts(std::vector<std::size_t> counts) {
  LabeledSample s;
  s.num_classes = counts.size();
  for (std::size_t c = 0; c < counts.size(); ++c)
    for (std::size_t i = 0; i < counts[c]; ++i) s.records.push_back({static_cast<double>(c) + 1e-3 * i, c});
  return s;
}

std::vector<double> class_means(const LabeledSample& s) {
  std::vector<double> sum(s.num_classes, 0.0);
  const auto n = s.class_counts();
  for (const auto& r : s.records) sum[r.label] += r.x;
  for (std::size_t c = 0; c < sum.size(); ++c) sum[c] /= static_cast<double>(n[c]);
  return sum;
}
}  // namespace

TEST_CASE("SplitMix64 reference outputs") {
  // First outputs of the reference generator seeded with 1234567.
  SplitMix64 g(1234567);
  CHECK(g.next() == 6457827717110365317ULL);
  CHECK(g.next() == 3203168211198807973ULL);
  CHECK(g.next() == 9817491932198370423ULL);
  CHECK(SplitMix64::at(1234567, 2) == 9817491932198370423ULL);
  CHECK(SplitMix64::to_open_unit(0) > 0.0);
  CHECK(SplitMix64::to_open_unit(~0ULL) < 1.0);
  SplitMix64 b(9);
  for (int i = 0; i < 1000; ++i) CHECK(b.next_below(7) < 7);
}

TEST_CASE("sample: counts, determinism, boundary") {
  GaussianMixtureModel m({0, 2}, 1.0, ClassDistribution({0.9, 0.1}));
  const auto s = sample(m, 1000000, 42);
  const auto n = s.class_counts();
  CHECK(std::fabs(static_cast<double>(n[0]) - 9e5) <= 3 * std::sqrt(1e6 * 0.09));
  const auto t = sample(m, 1000000, 42);
  CHECK(s.records.size() == t.records.size());
  bool same = true;
  for (std::size_t i = 0; i < s.records.size(); ++i)
    same = same && s.records[i].x == t.records[i].x && s.records[i].label == t.records[i].label;
  CHECK(same);
  const auto one = sample(m, 1, 42);
  CHECK(one.size() == 1);
  CHECK(one.records[0].x == s.records[0].x);  // prefix property
  CHECK_THROWS_AS(sample(m, 0, 1), DomainError);
  CHECK(sample(m, 10, 43).records[0].x != s.records[0].x);
}

TEST_CASE("heteroscedastic sampling") {
  const std::vector<double> mu{0.0, 5.0}, sd{1.0, 3.0};
  const auto s = imbalab::sample(mu, sd, ClassDistribution({0.5, 0.5}), 200000, 5);
  double ss = 0;
  std::size_t n1 = 0;
  for (const auto& r : s.records)
    if (r.label == 1) ss += (r.x - 5.0) * (r.x - 5.0), ++n1;
  CHECK(std::sqrt(ss / n1) == doctest::Approx(3.0).epsilon(0.02));
  CHECK_THROWS_AS(imbalab::sample(mu, std::vector<double>{1.0}, ClassDistribution({0.5, 0.5}), 10, 1), DimensionError);
  CHECK_THROWS_AS(imbalab::sample(mu, std::vector<double>{1.0, 0.0}, ClassDistribution({0.5, 0.5}), 10, 1), DomainError);
}

TEST_CASE("zero-prior classes are never drawn") {
  GaussianMixtureModel m({0, 1, 2}, 1.0, ClassDistribution({0.5, 0.0, 0.5}));
  CHECK(sample(m, 100000, 3).class_counts()[1] == 0);
}

TEST_CASE("ros and rus counts") {
  const auto s = with_counts({900, 100});
  const auto o = ros(s, 1);
  CHECK(o.class_counts() == std::vector<std::size_t>{900, 900});
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(o.records[i].x == s.records[i].x);
  const auto u = rus(s, 1);
  CHECK(u.class_counts() == std::vector<std::size_t>{100, 100});
  const auto bal = with_counts({50, 50, 50});
  CHECK(ros(bal, 2).class_counts() == bal.class_counts());
  CHECK(rus(bal, 2).class_counts() == bal.class_counts());
  CHECK(rus(bal, 2).records.size() == 150);
  CHECK_THROWS_AS(ros(with_counts({10, 0}), 1), DomainError);
  CHECK_THROWS_AS(rus(with_counts({0, 10}), 1), DomainError);
  // determinism and seed sensitivity
  CHECK(ros(s, 9).records.back().x == ros(s, 9).records.back().x);
  CHECK(rus(s, 9).records[0].x == rus(s, 9).records[0].x);
}

TEST_CASE("rus keeps original order and draws without replacement") {
  const auto s = with_counts({500, 20});
  const auto u = rus(s, 4);
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (u.records[i].label == u.records[i - 1].label) CHECK(u.records[i].x > u.records[i - 1].x);
  }
}

TEST_CASE("property: resampling preserves per-class means") {
  const auto m = fixtures::example3();
  const auto s = sample(m, 200000, 8);
  const auto base = class_means(s);
  const auto counts = s.class_counts();
  for (const auto& r : {ros(s, 1), rus(s, 1)}) {
    const auto got = class_means(r);
    const auto rc = r.class_counts();
    for (std::size_t c = 0; c < 3; ++c) {
      const double se = m.sigma() * std::sqrt(1.0 / rc[c] + 1.0 / counts[c]);
      CHECK(std::fabs(got[c] - base[c]) < 4 * se);
    }
  }
}

TEST_CASE("plug-in fit") {
  const auto m = fixtures::example3();
  const auto raw = sample(m, 1000000, 42);
  const auto b = bdr(m);
  const auto fb = fit_plugin_rule(raw);
  CHECK(std::fabs(fb.cuts()[0] - b.cuts()[0]) < 0.02);
  CHECK(std::fabs(fb.cuts()[1] - b.cuts()[1]) < 0.02);

  const auto balanced = sample(m.with_eta(ClassDistribution::uniform(3)), 1000000, 43);
  const auto fe = fit_plugin_rule(balanced);
  CHECK(std::fabs(fe.cuts()[0] - 4.0) < 0.02);
  CHECK(std::fabs(fe.cuts()[1] - 5.5) < 0.02);

  const auto over = fit_plugin(ros(raw, 7));
  for (std::size_t c = 0; c < 3; ++c) CHECK(std::fabs(over.model.eta()[c] - 1.0 / 3) < 0.01);
  CHECK(std::fabs(over.rule.cuts()[0] - 4.0) < 0.02);
  CHECK(std::fabs(over.rule.cuts()[1] - 5.5) < 0.02);
  const auto under = fit_plugin_rule(rus(raw, 7));
  CHECK(std::fabs(under.cuts()[0] - over.rule.cuts()[0]) < 0.02);
  CHECK(std::fabs(under.cuts()[1] - over.rule.cuts()[1]) < 0.02);

  const auto known = fit_plugin(raw, 0.5);
  CHECK(known.model.sigma() == 0.5);
}

TEST_CASE("plug-in fit errors") {
  CHECK_THROWS_AS(fit_plugin(with_counts({5, 1})), EstimationError);
  CHECK_NOTHROW(fit_plugin(with_counts({5, 1}), 1.0));
  CHECK_THROWS_AS(fit_plugin(with_counts({5, 0}), 1.0), EstimationError);
  LabeledSample swapped;
  swapped.num_classes = 2;
  swapped.records = {{2.0, 0}, {2.1, 0}, {0.0, 1}, {0.1, 1}};
  CHECK_THROWS_AS(fit_plugin(swapped), EstimationError);
  LabeledSample flat;
  flat.num_classes = 2;
  flat.records = {{0.0, 0}, {0.0, 0}, {1.0, 1}, {1.0, 1}};
  CHECK_THROWS_AS(fit_plugin(flat), EstimationError);
}

TEST_CASE("empirical confusion") {
  const auto m = fixtures::example3();
  const auto s = sample(m, 1000000, 42);
  const auto all1 = empirical_confusion(s, ThresholdRule::constant(3, 0));
  const auto counts = s.class_counts();
  for (std::size_t i = 0; i < 3; ++i) CHECK(all1(i, 0) == static_cast<double>(counts[i]) / 1e6);
  CHECK(all1.provenance() == Provenance::empirical);

  const auto e = empirical_confusion(s, bdr(m));
  const auto a = true_confusion(m, bdr(m));
  for (std::size_t i = 0; i < 9; ++i) CHECK(std::fabs(e.entries()[i] - a.entries()[i]) < 0.005);
  const auto ser = empirical_confusion(s, bdr(m), Execution::serial);
  for (std::size_t i = 0; i < 9; ++i) CHECK(ser.entries()[i] == e.entries()[i]);

  const auto one = empirical_confusion(sample(m, 1, 1), bdr(m));
  double total = 0;
  int ones = 0;
  for (double v : one.entries()) total += v, ones += v == 1.0;
  CHECK(total == 1.0);
  CHECK(ones == 1);
  CHECK_THROWS_AS(empirical_confusion(LabeledSample{3, {}, 0, ""}, bdr(m)), DomainError);
  CHECK_THROWS_AS(empirical_confusion(s, ThresholdRule({1.0})), DimensionError);
}

TEST_CASE("sample file round trip") {
  const auto s = sample(fixtures::example3(), 50, 42);
  const auto text = format_sample(s);
  CHECK(text.rfind("# sample: classes=3 n=50 seed=42\n# source: ", 0) == 0);
  const auto back = parse_sample(text);
  CHECK(back.num_classes == 3);
  CHECK(back.seed == 42);
  CHECK(back.size() == 50);
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(back.records[i].label == s.records[i].label);
    CHECK(back.records[i].x == doctest::Approx(s.records[i].x).epsilon(1e-11));
  }
  CHECK(format_sample(back) == text);
  try {
    parse_sample("x,class\n1.0,1\n2.0,zz\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_sample("1.0,1\n"), ParseError);
  CHECK_THROWS_AS(parse_sample("# sample: classes=2\nx,class\n1.0,3\n"), ParseError);
  CHECK_THROWS_AS(parse_sample("x,class\n1.0,0\n"), ParseError);
  CHECK(parse_sample("x,class\n1.0,1\n2.0,2\n").num_classes == 2);
}
