#include <cfloat>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "common.hpp"
#include "zgb/zeta_core.hpp"

namespace {

using zgb::hardy_z;
using zgb::rs_theta;
using zgb::zeta_euler_maclaurin;

constexpr double kPi = std::numbers::pi;

double bisect_theta_root(double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (rs_theta(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(Theta, RootNearEighteen) {
  EXPECT_NEAR(bisect_theta_root(17.0, 18.5), 17.8455995404108608, 1e-9);
}

TEST(Theta, LargeHeightOracle) {
  EXPECT_NEAR(rs_theta(2 * kPi * 1e4), 257935.0572619705341889, 1e-9);
}

TEST(Theta, HighPrecisionValues) {
  struct Case {
    double t, theta;
  };
  // mpmath siegeltheta, 40 digits
  const Case cases[] = {{1, -1.767547952812290388},  {2, -2.525910918816132690},
                        {5, -3.459620375363462533},  {9.5, -3.176784698854782707},
                        {10, -3.067074396289895292}, {100, 87.97216523178721963},
                        {1000, 2034.546428038031609}};
  for (const auto& c : cases) EXPECT_NEAR(rs_theta(c.t), c.theta, 1e-12 * std::max(1.0, std::fabs(c.theta))) << c.t;
}

TEST(Theta, CorrectionIsSeriesTail) {
  for (double t : {10.0, 12.0, 20.0, 30.0}) {
    const double leading = t / 2 * std::log(t / (2 * kPi)) - t / 2 - kPi / 8;
    const double corr = rs_theta(t) - leading;
    const double first = 1.0 / (48 * t);
    const double second = 7.0 / (5760 * t * t * t);
    // Every term of the tail is positive, so the correction sits just above 1/(48t).
    EXPECT_GT(corr, first) << t;
    EXPECT_LT(corr, first + 2 * second) << t;
  }
}

TEST(Theta, RoutesAgreeAtSwitch) {
  for (double t : {10.0, 10.5, 12.0, 15.0}) {
    const double a = static_cast<double>(zgb::detail::theta_asymptotic(t));
    const double b = static_cast<double>(zgb::detail::theta_log_gamma(t));
    EXPECT_NEAR(a, b, 1e-13) << t;
  }
}

TEST(Theta, Monotone) {
  double prev = rs_theta(10.0);
  for (double t = 10.05; t < 2e4; t *= 1.003) {
    const double cur = rs_theta(t);
    ASSERT_GT(cur, prev) << t;
    prev = cur;
  }
}

TEST(Theta, DerivativeMatchesHalfLog) {
  for (double t = 100; t <= 1e6; t *= 1.7) {
    const double h = 1e-3 * std::sqrt(t);
    const double fd = (rs_theta(t + h) - rs_theta(t - h)) / (2 * h);
    const double expected = 0.5 * std::log(t / (2 * kPi)) - 1 / (48 * t * t);
    EXPECT_NEAR(fd / expected, 1.0, 1e-9) << t;
  }
}

TEST(Theta, DomainError) {
  EXPECT_THROW(rs_theta(0.999), zgb::DomainError);
  EXPECT_THROW(rs_theta(-5), zgb::DomainError);
  EXPECT_NO_THROW(rs_theta(1.0));
}

TEST(Zeta, ClassicalValues) {
  const auto z2 = zeta_euler_maclaurin(2, 0);
  EXPECT_NEAR(z2.value.real(), kPi * kPi / 6, 1e-12);
  EXPECT_NEAR(z2.value.imag(), 0.0, 1e-15);
  EXPECT_NEAR(zeta_euler_maclaurin(0, 0).value.real(), -0.5, 1e-12);
}

TEST(Zeta, OffLineOracleValues) {
  struct Case {
    double sigma, t, re, im;
  };
  const Case cases[] = {{3, 4, 0.8905549069650732581, -0.008075945424327259847},
                        {-5, 2, -0.03086453889178166126, -0.007484601214945754805},
                        {0.5, 100, 2.692619885681324090, -0.02038602960259816177},
                        {0.5, 5000, 0.4068427136354325590, -0.6937641591980851025},
                        {2, -7, 1.022074969853391320, -0.1735485378021745082}};
  for (const auto& c : cases) {
    const auto v = zeta_euler_maclaurin(c.sigma, c.t);
    EXPECT_NEAR(v.value.real(), c.re, 1e-10) << c.sigma << " " << c.t;
    EXPECT_NEAR(v.value.imag(), c.im, 1e-10) << c.sigma << " " << c.t;
    EXPECT_LE(std::abs(v.value - std::complex<double>(c.re, c.im)), v.abs_err_est + 1e-15);
  }
}

TEST(Zeta, VanishesAtFirstOrdinate) {
  EXPECT_LT(std::abs(zeta_euler_maclaurin(0.5, zgb::testing::kGamma1).value), 1e-6);
}

TEST(Zeta, ErrorsAreFlagged) {
  EXPECT_THROW(zeta_euler_maclaurin(1, 0), zgb::DomainError);
  EXPECT_THROW(zeta_euler_maclaurin(0.5, 1e4 + 1), zgb::AccuracyError);
  EXPECT_THROW(zeta_euler_maclaurin(0.5, -2e4), zgb::AccuracyError);
  EXPECT_THROW(zeta_euler_maclaurin(-11, 3), zgb::AccuracyError);
  EXPECT_NO_THROW(zeta_euler_maclaurin(1, 1e-3));
}

TEST(HardyZ, OracleValues) {
  struct Case {
    double t, z;
  };
  // mpmath siegelz
  const Case cases[] = {{2, -0.5396331256461448720},      {5, -0.7388634282752647644},
                        {20, 1.147842412185197278},       {29.9, 0.7442761266956610500},
                        {30, 0.5960285192398849553},      {100, 2.692697056664463475},
                        {1000, 0.9977946375215866140},    {5000, -0.8042572363529398496},
                        {9999.5, -3.755120564315785436},  {1e5, 5.879592468681765042},
                        {1e6, -2.806133878430698479}};
  for (const auto& c : cases) {
    const auto p = zgb::hardy_z_point(c.t);
    EXPECT_NEAR(p.z_value, c.z, p.abs_err_est) << c.t;
    EXPECT_LT(p.abs_err_est, 3e-5) << c.t;
    if (c.t < 30 || c.t >= 1000) {
      EXPECT_NEAR(p.z_value, c.z, 1e-8) << c.t;
    }
    EXPECT_EQ(p.method, c.t >= 30 ? zgb::ZMethod::riemann_siegel : zgb::ZMethod::euler_maclaurin);
  }
}

TEST(HardyZ, SmallAtFirstOrdinate) { EXPECT_LT(std::fabs(hardy_z(zgb::testing::kGamma1)), 1e-5); }

TEST(HardyZ, DomainError) {
  EXPECT_THROW(hardy_z(1.99), zgb::DomainError);
  EXPECT_THROW(zgb::hardy_z_riemann_siegel(6.0), zgb::DomainError);
}

TEST(HardyZ, ModulusMatchesZeta) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> dist(2.0, 1e4);
  for (int i = 0; i < 1000; ++i) {
    const double t = dist(rng);
    const auto p = zgb::hardy_z_point(t);
    const auto z = zeta_euler_maclaurin(0.5, t);
    const double tol = p.abs_err_est + z.abs_err_est + 4 * DBL_EPSILON * std::abs(z.value);
    ASSERT_LE(std::fabs(std::fabs(p.z_value) - std::abs(z.value)), tol) << t;
    ASSERT_TRUE(std::isfinite(p.abs_err_est));
    ASSERT_GE(p.abs_err_est, 0.0);
  }
}

TEST(HardyZ, MethodsAgreeWithinEstimates) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(30.0, 1e4);
  for (int i = 0; i < 300; ++i) {
    const double t = dist(rng);
    const auto rs = zgb::hardy_z_riemann_siegel(t);
    const auto em = zgb::hardy_z_euler_maclaurin(t);
    ASSERT_LE(std::fabs(rs.z_value - em.z_value), rs.abs_err_est + em.abs_err_est) << t;
  }
}

TEST(HardyZ, SignChangesCountZeros) {
  const auto& ref = zgb::testing::reference_file().parsed;
  const std::pair<double, double> spans[] = {{14.2, 18.0}, {10.0, 18.0}, {14.2, 30.0}, {50.0, 80.0},
                                             {100.0, 101.5}, {200.0, 260.0}};
  for (const auto& [a, b] : spans) {
    std::size_t between = 0;
    for (double g : ref) between += (g > a && g < b) ? 1 : 0;
    const bool same_sign = (hardy_z(a) > 0) == (hardy_z(b) > 0);
    EXPECT_EQ(same_sign, between % 2 == 0) << a << " " << b;
  }
}

}  // namespace
