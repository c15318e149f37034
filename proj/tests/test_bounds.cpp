#include <cfloat>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "common.hpp"
#include "zgb/bounds.hpp"

namespace {

using namespace zgb::bounds;
using zgb::DomainError;
using zgb::testing::kGamma1;

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

TEST(BigF, ClosedForms) {
  EXPECT_NEAR(big_f(2 * kPi), -0.125, 1e-15);
  EXPECT_NEAR(big_f(2 * kPi * kE), 0.875, 1e-14);
  EXPECT_NEAR(big_f(100), 29.00234358732535, 1e-12);
  EXPECT_NEAR(big_f(10), 0.023056364335396, 1e-13);
  EXPECT_THROW(big_f(1.999), DomainError);
}

TEST(BigR, ClosedForms) {
  EXPECT_NEAR(big_r(kE), 1.725, 1e-15);
  EXPECT_NEAR(big_r(std::exp(kE)), 0.137 * kE + 0.433 + 1.588, 1e-14);
  EXPECT_NEAR(big_r(100), 2.880177093455190, 1e-13);
  EXPECT_NEAR(big_r(10), 2.264590206532549, 1e-13);
  EXPECT_THROW(big_r(1.5), DomainError);
}

TEST(Envelope, Invariants) {
  for (double T = 2; T < 1e6; T *= 1.37) {
    const auto e = envelope(T);
    EXPECT_GT(e.r_val, 0.0);
    EXPECT_LE(e.lower, e.upper);
    EXPECT_NEAR(e.upper - e.f_val, e.r_val, 2 * DBL_EPSILON * e.upper);
  }
  const auto e = envelope(100);
  EXPECT_TRUE(e.contains(29));
  EXPECT_TRUE(e.contains(27));
  EXPECT_FALSE(e.contains(32));
}

TEST(MainTerm, Values) {
  EXPECT_LT(std::fabs(main_term(1 + 1e-12)), 1e-11);
  const double l = std::log(2 * kPi);
  EXPECT_NEAR(main_term(2 * kPi), -l * l / (4 * kPi), 1e-15);
  EXPECT_NEAR(main_term(2 * kPi), -0.268796155619804, 1e-14);
  EXPECT_NEAR(main_term(100), 0.340601055768934, 1e-14);
  EXPECT_NEAR(main_term(10), -0.251611118141641, 1e-14);
  EXPECT_NEAR(main_term(2), -0.164517318732770, 1e-14);
  EXPECT_THROW(main_term(1.0), DomainError);
  EXPECT_THROW(main_term(0.5), DomainError);
}

double central_difference(double (*f)(double), double t) {
  const double h = 1e-4 * t;
  return (f(t + h) - f(t - h)) / (2 * h);
}

TEST(AntiderivF, Values) {
  EXPECT_NEAR(antideriv_f(kGamma1), -0.723646305952016, 1e-13);
  EXPECT_NEAR(antideriv_f(2 * kPi), -0.724275015033966, 1e-13);
  const double l = std::log(2 * kPi);
  EXPECT_NEAR(antideriv_f(2 * kPi),
              (l * l - 2 * l) / (4 * kPi) + l * l / (4 * kPi) - (1 + l) * l / (2 * kPi) - 7 / (16 * kPi), 1e-14);
  EXPECT_NEAR(central_difference(antideriv_f, 50) / (big_f(50) / 2500), 1.0, 1e-8);
  EXPECT_THROW(antideriv_f(1.9), DomainError);
}

TEST(AntiderivR, Values) {
  EXPECT_NEAR(antideriv_r(kGamma1), -0.186429598173696, 1e-13);
  EXPECT_NEAR(central_difference(antideriv_r, 50) / (big_r(50) / 2500), 1.0, 1e-8);
  EXPECT_LT(std::fabs(antideriv_r(1e6)), 1e-4);
  EXPECT_THROW(antideriv_r(1.9), DomainError);
}

TEST(Antiderivatives, FiniteDifferencesOnRandomHeights) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(2.0, 1e4);
  for (int i = 0; i < 200; ++i) {
    const double t = std::max(dist(rng), 2.0 + 1e-3);
    const double tt = t * t;
    EXPECT_NEAR(central_difference(antideriv_f, t) / (big_f(t) / tt), 1.0, 1e-7) << t;
    EXPECT_NEAR(central_difference(antideriv_r, t) / (big_r(t) / tt), 1.0, 1e-7) << t;
  }
}

TEST(ExpIntE1, OracleValues) {
  struct Case {
    double x, v;
  };
  const Case cases[] = {{0.1, 1.822923958419390616}, {0.5, 0.5597735947761608117}, {1, 0.2193839343955202737},
                        {2, 0.04890051070806111957}, {10, 4.15696892968532427740e-6},
                        {50, 3.783264029550459019e-24}};
  for (const auto& c : cases) EXPECT_NEAR(expint_e1(c.x) / c.v, 1.0, 1e-14) << c.x;
  EXPECT_THROW(expint_e1(0.0), DomainError);
}

TEST(EFrak, Values) {
  EXPECT_NEAR(e_frak(kE), 0.219383934395520, 1e-14);
  EXPECT_NEAR(e_frak(2), 0.378671043061088, 1e-14);
  EXPECT_NEAR(e_frak(kGamma1), 0.020506560332567, 1e-14);
  const double t = 1e6;
  const double scaled = t * std::log(t) * e_frak(t);
  EXPECT_GT(scaled, 0.9);
  EXPECT_LT(scaled, 1.0);
  EXPECT_THROW(e_frak(1.0), DomainError);
  EXPECT_NO_THROW(e_frak(1 + 1e-6));
}

TEST(EFrak, DerivativeAtTen) {
  const double t = 10;
  const double h = 1e-4;
  const double fd = (e_frak(t + h) - e_frak(t - h)) / (2 * h);
  EXPECT_NEAR(fd / (-1.0 / (t * t * std::log(t))), 1.0, 1e-6);
}

TEST(EFrak, QuadratureOracleAgrees) {
  for (int i = 0; i < 200; ++i) {
    const double t = 2.0 * std::pow(5e5, i / 199.0);
    const auto q = e_frak_quadrature(t);
    ASSERT_TRUE(q.converged) << t;
    EXPECT_NEAR(e_frak(t), q.value, 1e-10) << t;
    EXPECT_NEAR(e_frak(t), q.value, 1e-14 + 1e-12 * q.value) << t;
  }
}

TEST(Sandwich, HoldsOnLogGridWithMargin) {
  for (int i = 0; i < 200; ++i) {
    const double t = 2.0 * std::pow(5e5, i / 199.0);
    const auto s = e_frak_sandwich(t);
    ASSERT_TRUE(s.holds) << t;
    EXPECT_GT(s.margin_lo, 10 * s.value_err) << t;
    EXPECT_GT(s.margin_hi, 10 * s.value_err) << t;
  }
}

TEST(Sandwich, TwoIsTheBindingPoint) {
  const auto at2 = e_frak_sandwich(2);
  EXPECT_TRUE(at2.holds);
  const double width2 = at2.hi - at2.lo;
  EXPECT_NEAR(at2.margin_hi, 0.00303, 5e-4);
  for (double t = 2.01; t < 1e6; t *= 1.05) {
    const auto s = e_frak_sandwich(t);
    EXPECT_GT(s.margin_hi / (s.hi - s.lo), at2.margin_hi / width2) << t;
  }
}

TEST(Sandwich, Examples) {
  EXPECT_TRUE(e_frak_sandwich(100).holds);
  const double t = 1e6;
  const auto s = e_frak_sandwich(t);
  EXPECT_TRUE(s.holds);
  EXPECT_LT(s.hi - s.lo, 2 / (t * std::log(t) * std::log(t)));
  EXPECT_THROW(e_frak_sandwich(1.99), DomainError);
}

TEST(TailUpper, Values) {
  EXPECT_NEAR(tail_upper(2), 0.06977, 1e-5);  // positive below the 2.222 threshold
  EXPECT_LE(tail_upper(2.222), 0.0);
  EXPECT_NEAR(tail_upper(2.222), -2.954e-5, 1e-8);
  EXPECT_GT(tail_upper(2.2218573491 - 1e-7), 0.0);
  EXPECT_LT(tail_upper(2.2218573491 + 1e-7), 0.0);
  EXPECT_LT(tail_upper(100), 0.0);
  EXPECT_NEAR(tail_upper(100), -0.002106076, 1e-9);
  EXPECT_THROW(tail_upper(1.5), DomainError);
}

TEST(TailLower, Values) {
  EXPECT_NEAR(tail_lower(2), 1.454488, 1e-6);
  EXPECT_NEAR(tail_lower(100), 0.0597096, 1e-7);
  EXPECT_GT(tail_lower(1e6), 0.0);
  EXPECT_LT(tail_lower(1e6), 1e-3);
  EXPECT_NEAR(tail_lower(1e6), 9.4015e-6, 1e-9);
  EXPECT_THROW(tail_lower(1.5), DomainError);
}

TEST(Tails, SignsOnDenseGrids) {
  for (double T = 2.222; T < 1e8; T *= 1.0005) ASSERT_LT(tail_upper(T), 0.0) << T;
  for (double T = 2.0; T < 1e8; T *= 1.0005) ASSERT_GT(tail_lower(T), 0.0) << T;
}

TEST(Rationals, ExactValues) {
  EXPECT_EQ(kLowerFloor.num * 250, 15 * kLowerFloor.den);
  EXPECT_DOUBLE_EQ(kUpperCap.value(), 0.436);
  EXPECT_DOUBLE_EQ(kUpperThreshold.value(), 2.222);
  EXPECT_DOUBLE_EQ(kEnvelopeConst.value(), 1.588);
}

}  // namespace
