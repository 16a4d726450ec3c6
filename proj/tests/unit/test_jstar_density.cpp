#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "polyagamma/jstar_density.hpp"
#include "polyagamma/validation.hpp"
#include "test_support.hpp"

using namespace polyagamma;

namespace {

// h * sum_n 1/d_n over 10^6 terms plus the integral tail beyond.
double series_mean(double h, double z) {
  constexpr long n_terms = 1000000;
  const double a = z / pi;
  long double sum = 0;
  for (long n = n_terms - 1; n >= 0; --n) sum += 1.0L / d_index(n, z);
  const double tail = z > 0 ? (2 / pi_sq) * (half_pi - std::atan(n_terms / a)) / a
                            : (2 / pi_sq) / static_cast<double>(n_terms);
  return h * static_cast<double>(sum + tail);
}

// h * sum_n 1/d_n^2; the tail past 10^6 terms is below 1e-18.
double series_var(double h, double z) {
  long double sum = 0;
  for (long n = 999999; n >= 0; --n) {
    const long double d = d_index(n, z);
    sum += 1.0L / (d * d);
  }
  return h * static_cast<double>(sum);
}

}  // namespace

TEST(Indices, Values) {
  EXPECT_DOUBLE_EQ(c_index(0), pi_sq / 8);
  EXPECT_DOUBLE_EQ(c_index(1), 9 * pi_sq / 8);
  for (int n = 0; n < 20; ++n) {
    EXPECT_NEAR(c_index(n) / c_index(0), (2.0 * n + 1) * (2.0 * n + 1), 1e-10);
    EXPECT_EQ(d_index(n, 0.0), c_index(n));
  }
  EXPECT_DOUBLE_EQ(d_index(0, 2.0), pi_sq / 8 + 2);
  EXPECT_DOUBLE_EQ(d_index(3, 1.0), 49 * pi_sq / 8 + 0.5);
}

TEST(Params, NegativeTiltFoldsToAbsoluteValue) {
  EXPECT_EQ(JStarParams(2.0, -1.5).z, 1.5);
  EXPECT_THROW(JStarParams(0.0, 1.0), domain_error);
}

TEST(CoefLeft, ShapeOneIdentity) {
  for (const double x : {0.2, 1.0, 3.0}) {
    for (int n = 0; n < 6; ++n) {
      const double k = n + 0.5;
      const double expected = pi * k * std::pow(2 / (pi * x), 1.5) * std::exp(-2 * k * k / x);
      EXPECT_NEAR(coef_left(n, x, JStarParams(1, 0)), expected, 1e-13 * expected);
    }
  }
}

TEST(CoefLeft, TiltFactorization) {
  for (const double h : {1.0, 2.5, 4.0}) {
    for (const double x : {0.3, 1.7}) {
      const double factor = std::pow(std::cosh(1.3), h) * std::exp(-x * 1.3 * 1.3 / 2);
      for (int n = 0; n < 4; ++n) {
        EXPECT_NEAR(coef_left(n, x, {h, 1.3}) / coef_left(n, x, {h, 0}), factor, 1e-12 * factor);
      }
    }
  }
}

TEST(CoefLeft, QuotientMatchesRatio) {
  for (const double h : {1.0, 1.7, 3.2}) {
    for (const double x : {0.4, 2.0, 6.0}) {
      for (int n = 0; n < 10; ++n) {
        const double q = coef_left(n + 1, x, {h, 0.7}) / coef_left(n, x, {h, 0.7});
        EXPECT_NEAR(q, coef_ratio(n, x, h), 1e-12 * q);
      }
    }
  }
}

TEST(CoefLeft, DomainError) { EXPECT_THROW(coef_left(0, 0.0, {1, 0}), domain_error); }

TEST(CoefRightH1, PasteAtTwoOverPi) {
  const double x = 2 / pi;
  EXPECT_NEAR(coef_right_h1(0, x, 0), coef_left(0, x, {1, 0}), 1e-10 * coef_right_h1(0, x, 0));
}

TEST(CoefRightH1, ClosedFormAndDecrease) {
  for (int n = 0; n < 5; ++n) {
    const double k = n + 0.5;
    EXPECT_NEAR(coef_right_h1(n, 0.8, 0), pi * k * std::exp(-k * k * pi_sq * 0.8 / 2), 1e-15);
  }
  for (int n = 0; n < 25; ++n) EXPECT_LT(coef_right_h1(n + 1, 0.2, 0.5), coef_right_h1(n, 0.2, 0.5));
  EXPECT_THROW(coef_right_h1(0, -1.0, 0), domain_error);
}

TEST(CoefRatio, ShapeOneForm) {
  for (const double x : {0.3, 1.0, 5.0}) {
    for (int n = 0; n < 8; ++n) {
      const double expected = (1 + 2.0 / (2 * n + 1)) * std::exp(-(2 / x) * (2 * n + 2));
      EXPECT_NEAR(coef_ratio(n, x, 1.0), expected, 1e-14 * expected);
    }
  }
}

TEST(CoefRatio, DecreasingInNIncreasingInX) {
  for (const double h : {1.0, 2.2, 4.0}) {
    for (int n = 0; n < 40; ++n) EXPECT_LT(coef_ratio(n + 1, 3.0, h), coef_ratio(n, 3.0, h));
    for (double x = 0.1; x < 20; x *= 1.3) EXPECT_LT(coef_ratio(2, x, h), coef_ratio(2, x * 1.3, h));
  }
  EXPECT_THROW(coef_ratio(0, 1.0, 0.5), domain_error);
}

TEST(CoefRatio, OnceBelowOneStaysBelowOne) {
  for (int i = 0; i < 20; ++i) {
    const double x = 0.05 * std::pow(400.0, i / 19.0);
    for (int j = 0; j < 20; ++j) {
      const double h = 1.0 + 3.0 * j / 19.0;
      bool below = false;
      for (int n = 0; n <= 50; ++n) {
        const bool now = coef_ratio(n, x, h) < 1;
        if (below) {
          ASSERT_TRUE(now) << "x=" << x << " h=" << h << " n=" << n;
        }
        below = below || now;
      }
    }
  }
}

TEST(PartialSums, FirstSteps) {
  const JStarParams p(1.0, 0.0);
  const SeriesEvalState s0 = start_series(1.0, p);
  EXPECT_EQ(s0.n, 0);
  EXPECT_EQ(s0.sum, coef_left(0, 1.0, p));
  const SeriesEvalState s1 = partial_sum_step(s0, p);
  EXPECT_EQ(s1.n, 1);
  EXPECT_LT(s1.sum, s0.sum);
  EXPECT_NEAR(s1.coef, coef_left(1, 1.0, p), 1e-14);
}

TEST(PartialSums, ConvergeAtUnitX) {
  const JStarParams p(1.0, 0.0);
  SeriesEvalState s = start_series(1.0, p);
  double prev = s.sum;
  for (int i = 0; i < 12; ++i) {
    prev = s.sum;
    s = partial_sum_step(s, p);
  }
  EXPECT_LT(std::fabs(s.sum - prev), 1e-12 * prev);
  EXPECT_NEAR(s.sum, density(1.0, p), 1e-12 * s.sum);
}

TEST(PartialSums, FlagIsSticky) {
  const JStarParams p(3.5, 0.0);
  SeriesEvalState s = start_series(9.0, p);
  bool seen = false;
  for (int i = 0; i < 60; ++i) {
    s = partial_sum_step(s, p);
    if (seen) {
      ASSERT_TRUE(s.decreasing);
    }
    seen = seen || s.decreasing;
  }
  EXPECT_TRUE(seen);
}

TEST(PartialSums, BracketTheDensityOnceDecreasing) {
  for (const double h : {1.0, 1.8, 2.6, 4.0}) {
    for (const double x : {0.1, 0.5, 1.0, 2.5, 5.0, 9.0}) {
      const JStarParams p(h, 0.0);
      const double f = density(x, p);
      SeriesEvalState s = start_series(x, p);
      double peak = s.coef;
      for (int i = 0; i < 60; ++i) {
        s = partial_sum_step(s, p);
        peak = std::fmax(peak, s.coef);
        if (!s.decreasing) continue;
        // roundoff in a partial sum scales with its largest term
        const double slack = 64 * std::numeric_limits<double>::epsilon() * peak + 1e-15 * f;
        if (s.n % 2 == 0) {
          ASSERT_GE(s.sum, f - slack) << h << " " << x << " n=" << s.n;
        } else {
          ASSERT_LE(s.sum, f + slack) << h << " " << x << " n=" << s.n;
        }
      }
    }
  }
}

TEST(Density, NormalizesToOne) {
  const std::pair<double, double> cells[] = {{1, 0}, {2.5, 0}, {4, 0}, {1, 1}, {2.5, 1}, {4, 1}, {4, 2}};
  for (const auto& [h, z] : cells) {
    const JStarParams p(h, z);
    const double mass = pgtest::integrate_half_line([&](double x) { return x > 0 ? density(x, p) : 0.0; },
                                                    {0.5, 2, 8});
    EXPECT_NEAR(mass, 1.0, 1e-8) << h << " " << z;
  }
}

TEST(Density, MeanMatchesClosedForm) {
  const JStarParams p(2.5, 1.0);
  const double mean = pgtest::integrate_half_line(
      [&](double x) { return x > 0 ? x * density(x, p) : 0.0; }, {0.5, 2, 8});
  EXPECT_NEAR(mean, jstar_mean(p), 1e-6);
}

TEST(Density, TwinSeriesAgree) {
  for (const double x : {0.5, 1.0, 2.0}) {
    const double left = std::exp(log_density_left_series(x, {1, 0}));
    const double right = std::exp(log_density_right_series_h1(x, 0));
    EXPECT_NEAR(left, right, 1e-10 * right) << x;
  }
}

TEST(Density, TiltConsistency) {
  for (const double h : {1.0, 2.5, 4.0}) {
    for (const double z : {0.3, 1.0, 3.0}) {
      for (const double x : {0.2, 1.0, 3.0}) {
        const double factor = std::exp(h * log_cosh(z) - x * z * z / 2);
        const double expected = factor * density(x, {h, 0});
        EXPECT_NEAR(density(x, {h, z}), expected, 1e-12 * expected) << h << " " << z << " " << x;
      }
    }
  }
}

TEST(Density, FarTailMatchesHighPrecisionSeries) {
  // log f(x|h,0) from the left series summed in 120-digit arithmetic
  const struct {
    double h, x, log_f;
  } cases[] = {{2.5, 20, -19.374594232371634543},
               {4, 30, -26.874857843157359041},
               {1.5, 60, -71.179244526318773293},
               {16, 25, -5.2763681904151308682},
               {3.3, 12, -8.7174215058760018824}};
  for (const auto& c : cases) {
    EXPECT_NEAR(log_density(c.x, {c.h, 0}), c.log_f, 1e-12) << c.h << " " << c.x;
    EXPECT_NEAR(log_density_contour(c.x, {c.h, 0}), c.log_f, 1e-12) << c.h << " " << c.x;
  }
}

TEST(Density, ContourAgreesWithSeriesInTheBulk) {
  for (const double h : {1.0, 1.7, 2.5, 4.0}) {
    for (const double x : {0.5, 1.0, 2.0, 4.0}) {
      const JStarParams p(h, 0.8);
      EXPECT_NEAR(log_density_contour(x, p), log_density(x, p), 1e-12) << h << " " << x;
    }
  }
}

TEST(Density, HugeArgumentsStayFinite) {
  for (const double h : {1.0, 2.5, 4.0}) {
    const double v = log_density(1e4, {h, 0});
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_NEAR(v, log_kernel_r(1e4, {h, 0}), 0.05 * std::fabs(v));
  }
}

TEST(Density, DomainError) { EXPECT_THROW(density(0.0, {1, 0}), domain_error); }

TEST(GammaSum, MeanEqualsTruncatedSeries) {
  const JStarParams p(1.5, 0.8);
  const auto xs = pgtest::draw(pgtest::mc_draws, 21, [&](RngStream& r) { return sample_gamma_sum(p, 50, r); });
  double expected = 0;
  for (int n = 0; n < 50; ++n) expected += p.h / d_index(n, p.z);
  EXPECT_LT(summarize(xs).mean_z(expected), 4.0);
}

TEST(GammaSum, TwoHundredTermsAtUnitShape) {
  const JStarParams p(1.0, 0.0);
  const auto xs = pgtest::draw(pgtest::mc_draws, 22, [&](RngStream& r) { return sample_gamma_sum(p, 200, r); });
  EXPECT_LT(summarize(xs).mean_z(0.998986790274416), 4.0);
}

TEST(GammaSum, MoreTermsMoreMass) {
  const JStarParams p(2.0, 0.5);
  const auto many = pgtest::draw(20000, 23, [&](RngStream& r) { return sample_gamma_sum(p, 200, r); });
  const auto few = pgtest::draw(20000, 23, [&](RngStream& r) { return sample_gamma_sum(p, 10, r); });
  EXPECT_GT(summarize(many).mean, summarize(few).mean);
}

TEST(Moments, ClosedFormsMatchSeries) {
  EXPECT_NEAR(jstar_mean({1, 0}), 1.0, 1e-15);
  EXPECT_NEAR(jstar_var({1, 0}), 2.0 / 3.0, 1e-15);
  for (const auto& [h, z] : std::vector<std::pair<double, double>>{
           {1, 0}, {3, 2}, {1, 1}, {2.5, 0.05}, {4, 0.5}, {1, 10}, {7, 0.1}}) {
    EXPECT_NEAR(jstar_mean({h, z}), series_mean(h, z), 1e-10) << h << " " << z;
    EXPECT_NEAR(jstar_var({h, z}), series_var(h, z), 1e-10) << h << " " << z;
  }
  EXPECT_NEAR(jstar_mean({1, 2}), 0.482013790037908442, 1e-15);
  EXPECT_NEAR(jstar_var({1, 1}), 0.341619814341738819, 1e-14);
}

TEST(Moments, SmallTiltBranchIsContinuous) {
  auto jump = [](auto f, double z) {
    const double a = z * (1 - 1e-9);
    const double b = z * (1 + 1e-9);
    const double w = 1e-4 * z;
    const double slope = (f(z + w) - f(z - w)) / (2 * w);
    return std::fabs(f(b) - f(a) - slope * (b - a));
  };
  for (const double z : {1e-4, 0.1}) {
    EXPECT_LT(jump([](double t) { return jstar_mean({1, t}); }, z), 1e-14) << z;
    EXPECT_LT(jump([](double t) { return jstar_var({1, t}); }, z), 1e-13) << z;
  }
}

TEST(Kernels, LeftIsScaledInverseGamma) {
  for (const double h : {1.0, 2.0, 3.7}) {
    for (const double x : {0.1, 0.9, 4.0}) {
      const double beta = h * h / 2;
      const double igamma = std::sqrt(beta / pi) * std::pow(x, -1.5) * std::exp(-beta / x);
      const double expected = std::pow(2.0, h) * igamma;
      EXPECT_NEAR(kernel_ell(x, {h, 0}), expected, 1e-13 * expected);
    }
  }
}

TEST(Kernels, LeftAtShapeOneIsLeadingCoefficient) {
  for (const double x : {0.2, 0.6}) {
    for (const double z : {0.0, 1.5}) {
      EXPECT_NEAR(kernel_ell(x, {1, z}), coef_left(0, x, {1, z}), 1e-14 * kernel_ell(x, {1, z}));
    }
  }
}

TEST(Kernels, RightOverGammaDensityIsConstant) {
  const double h = 2.7;
  const double z = 1.1;
  const double rate = pi_sq / 8 + z * z / 2;
  const double expected = std::pow(std::cosh(z), h) * std::pow(half_pi / rate, h);
  for (const double x : {0.3, 1.0, 5.0}) {
    const double gamma_pdf = boost::math::gamma_p_derivative(h, rate * x) * rate;
    EXPECT_NEAR(kernel_r(x, {h, z}) / gamma_pdf, expected, 1e-12 * expected);
  }
  EXPECT_THROW(kernel_r(0.0, {h, z}), domain_error);
  EXPECT_THROW(kernel_ell(-1.0, {h, z}), domain_error);
}

TEST(MixtureWeights, MatchQuadratureOfKernels) {
  const std::pair<double, double> cells[] = {{1, 0}, {2.5, 0.7}, {4, 2}};
  for (const auto& [h, z] : cells) {
    const JStarParams p(h, z);
    const double t = h == 1 ? 2 / pi : solve_trunc_point(h);
    const double untilt = std::exp(-h * log_cosh(z));
    const double pl = pgtest::integrate([&](double x) { return x > 0 ? kernel_ell(x, p) : 0.0; }, 0.0, t);
    const double qr = pgtest::integrate([&](double x) { return kernel_r(x, p); }, t,
                                        std::numeric_limits<double>::infinity());
    const MixtureWeights w = mixture_weights(t, p);
    EXPECT_NEAR(w.p(), pl * untilt, 1e-8) << h << " " << z;
    EXPECT_NEAR(w.q(), qr * untilt, 1e-8) << h << " " << z;
  }
}

TEST(MixtureWeights, ShapeOneRightMass) {
  EXPECT_NEAR(mixture_weights(2 / pi, {1, 0}).q(), 0.580518454224179486, 1e-14);
}

TEST(MixtureWeights, ZeroTiltLimit) {
  for (const double h : {1.0, 2.5, 4.0}) {
    const double t = h == 1 ? 2 / pi : solve_trunc_point(h);
    EXPECT_NEAR(mixture_weights(t, {h, 1e-8}).p(), mixture_weights(t, {h, 0}).p(), 1e-6);
  }
  EXPECT_THROW(mixture_weights(0.0, {1, 0}), domain_error);
}

TEST(TruncPoint, ShapeOneIsTwoOverPi) { EXPECT_NEAR(solve_trunc_point(1.0), 2 / pi, 1e-6); }

TEST(TruncPoint, FrozenValues) {
  EXPECT_NEAR(solve_trunc_point(1.5), 1.455210793, 1e-8);
  EXPECT_NEAR(solve_trunc_point(2.0), 2.016769838, 1e-8);
  EXPECT_NEAR(solve_trunc_point(3.0), 3.081714893, 1e-8);
  EXPECT_NEAR(solve_trunc_point(4.0), 4.127941365, 1e-8);
}

TEST(TruncPoint, KernelsMeetThere) {
  for (const double h : {1.0, 2.0, 4.0}) {
    const double t = solve_trunc_point(h);
    const double l = kernel_ell(t, {h, 0});
    EXPECT_NEAR(kernel_r(t, {h, 0}), l, 1e-9 * l);
  }
}

TEST(TruncPoint, MinimizesTotalMass) {
  for (const double h : {1.5, 3.0}) {
    const double t = solve_trunc_point(h);
    const double c = mixture_weights(t, {h, 0}).log_total();
    EXPECT_GT(mixture_weights(t - 0.05, {h, 0}).log_total(), c);
    EXPECT_GT(mixture_weights(t + 0.05, {h, 0}).log_total(), c);
  }
}

TEST(TruncPoint, DomainError) {
  EXPECT_THROW(solve_trunc_point(0.9), domain_error);
  EXPECT_THROW(solve_trunc_point(4.1), domain_error);
}

TEST(Domination, HoldsAtEndShapes) {
  const auto grid = log_spaced_grid(0.01, 20, 2000);
  for (const double h : {1.0, 4.0}) {
    const DominationReport r = verify_domination(h, grid);
    EXPECT_TRUE(r.passed) << h;
    EXPECT_LE(r.max_rho_left, 1 + 1e-9);
    EXPECT_LE(r.max_rho_right, 1 + 1e-9);
  }
}

// f/l falls from 1 toward 0 and f/r climbs toward 1 along increasing x.
TEST(Domination, LeftRatioFallsRightRatioRises) {
  const auto grid = log_spaced_grid(0.01, 20, 2000);
  for (const double h : {1.0, 2.0, 3.3, 4.0}) {
    const DominationReport r = verify_domination(h, grid);
    EXPECT_TRUE(r.rho_left_nonincreasing) << h;
    EXPECT_TRUE(r.rho_right_nondecreasing) << h;
    EXPECT_FALSE(r.rho_left_nondecreasing) << h;
    EXPECT_FALSE(r.rho_right_nonincreasing) << h;
  }
}

TEST(Domination, NegativeSlackForcesFailure) {
  const auto grid = log_spaced_grid(0.01, 20, 50);
  EXPECT_FALSE(verify_domination(2.0, grid, -0.5).passed);
}
