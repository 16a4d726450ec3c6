#include <gtest/gtest.h>

#include <cmath>

#include "polyagamma/base_samplers.hpp"
#include "polyagamma/validation.hpp"
#include "test_support.hpp"

using namespace polyagamma;

TEST(Kolmogorov, CriticalValue) {
  EXPECT_NEAR(kolmogorov_critical(0.001), 1.94947, 1e-5);
  EXPECT_NEAR(kolmogorov_critical(0.05), 1.35810, 1e-5);
  EXPECT_NEAR(kolmogorov_survival(kolmogorov_critical(0.01)), 0.01, 1e-12);
  EXPECT_EQ(kolmogorov_survival(0.0), 1.0);
}

TEST(Ks, OneSampleAcceptsAndRejects) {
  const auto xs = pgtest::draw(100000, 91, [](RngStream& r) { return sample_exponential(r); });
  auto exp_cdf = [](double rate) { return [rate](double x) { return x > 0 ? 1 - std::exp(-rate * x) : 0.0; }; };
  EXPECT_TRUE(ks_one_sample(xs, exp_cdf(1.0)).passed(0.001));
  EXPECT_FALSE(ks_one_sample(xs, exp_cdf(1.02)).passed(0.001));
}

TEST(Ks, TwoSample) {
  const auto a = pgtest::draw(50000, 92, [](RngStream& r) { return sample_normal(r); });
  const auto b = pgtest::draw(50000, 93, [](RngStream& r) { return sample_normal(r); });
  const auto c = pgtest::draw(50000, 94, [](RngStream& r) { return 0.05 + sample_normal(r); });
  const KsResult same = ks_two_sample(a, b);
  EXPECT_TRUE(same.passed(0.001));
  EXPECT_EQ(same.effective_n, 25000);
  EXPECT_EQ(same.passed(0.001), same.statistic <= same.critical(0.001));
  EXPECT_FALSE(ks_two_sample(a, c).passed(0.001));
  const std::vector<double> x = {1, 2, 3};
  EXPECT_EQ(ks_two_sample(x, x).statistic, 0.0);
}

TEST(Moments, Welford) {
  const std::vector<double> xs = {1e9 + 1, 1e9 + 2, 1e9 + 3, 1e9 + 4};
  const Moments m = summarize(xs);
  EXPECT_DOUBLE_EQ(m.mean, 1e9 + 2.5);
  EXPECT_NEAR(m.variance(), 5.0 / 3, 1e-6);
  EXPECT_NEAR(m.mean_z(1e9 + 2.5 + m.standard_error()), 1.0, 1e-6);
}
