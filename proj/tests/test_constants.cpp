#include <cmath>

#include <gtest/gtest.h>

#include "common.hpp"
#include "zgb/constants.hpp"
#include "zgb/summation.hpp"

namespace {

using namespace zgb::bounds;
using zgb::testing::kGamma1;

TEST(Constants, ReferenceDigits) {
  const auto c = compute_constants();
  EXPECT_NEAR(c.c_au, 0.43596427, 1e-7);
  EXPECT_NEAR(c.c_al, 0.06058187, 1e-7);
  EXPECT_TRUE(c.c_au_below_cap());
  EXPECT_TRUE(c.c_al_above_floor());
  EXPECT_TRUE(c.converged);
  EXPECT_LT(c.convergence_gap, 1e-9);
}

TEST(Constants, FirstOrdinate) {
  const auto& c = constants();
  EXPECT_NEAR(c.gamma1, kGamma1, 1e-9);
  EXPECT_LE(c.gamma1_err, 1e-9);
}

TEST(Constants, ExactEFrakVariant) {
  // With E(gamma_1) itself in Q(gamma_1) the limits move by 0.433 (hi - E).
  const auto& c = constants();
  EXPECT_NEAR(c.c_au_exact_e, 0.4347026768, 1e-9);
  EXPECT_NEAR(c.c_al_exact_e, 0.0618434805, 1e-9);
  const auto s = e_frak_sandwich(c.gamma1);
  EXPECT_NEAR(c.c_au - c.c_au_exact_e, 0.433 * (s.hi - s.value), 1e-12);
  EXPECT_NEAR(c.c_al_exact_e - c.c_al, 0.433 * (s.hi - s.value), 1e-12);
  EXPECT_LT(c.c_au_exact_e, c.c_au);
  EXPECT_GT(c.c_al_exact_e, c.c_al);
}

TEST(Constants, CachedInstanceIsStable) {
  EXPECT_EQ(&constants(), &constants());
  const auto fresh = compute_constants(constants().gamma1);
  EXPECT_DOUBLE_EQ(fresh.c_au, constants().c_au);
}

TEST(Constants, InsensitiveToGammaPerturbation) {
  const auto a = compute_constants(kGamma1);
  const auto b = compute_constants(kGamma1 + 1e-9);
  const auto far = compute_constants(kGamma1 + 1e-6);
  // Slopes near 0.014 and 0.010 per unit of gamma_1; the response is linear.
  const double slope_u = (far.c_au - a.c_au) / 1e-6;
  const double slope_l = (far.c_al - a.c_al) / 1e-6;
  EXPECT_LT(std::fabs(slope_u), 0.02);
  EXPECT_LT(std::fabs(slope_l), 0.02);
  EXPECT_NEAR(b.c_au - a.c_au, slope_u * 1e-9, 1e-14);
  EXPECT_NEAR(b.c_al - a.c_al, slope_l * 1e-9, 1e-14);
}

TEST(UpperBound, SharpBelowSimplified) {
  for (double T = 2.222; T < 1e7; T *= 1.01) {
    const auto u = upper_bound_a(T);
    ASSERT_LT(u.sharp, u.simplified) << T;
  }
}

TEST(UpperBound, Examples) {
  const auto& c = constants();
  const auto u = upper_bound_a(100);
  EXPECT_DOUBLE_EQ(u.sharp, main_term(100) + c.c_au + tail_upper(100));
  EXPECT_DOUBLE_EQ(u.simplified, main_term(100) + 0.436);
  EXPECT_GE(upper_bound_a(kGamma1).sharp, 1 / kGamma1);
  EXPECT_NEAR(1 / kGamma1, 0.07074774995428558560, 1e-16);
  EXPECT_THROW(upper_bound_a(2.2), zgb::DomainError);
}

TEST(LowerBound, SharpAboveSimplified) {
  for (double T = 2.0; T < 1e7; T *= 1.01) {
    const auto l = lower_bound_a(T);
    ASSERT_GT(l.sharp, l.simplified) << T;
  }
}

TEST(LowerBound, Examples) {
  const auto l2 = lower_bound_a(2);
  EXPECT_NEAR(l2.simplified, -0.1045173187, 1e-9);
  EXPECT_LT(l2.simplified, 0.0);  // A(2) = 0 sits above the floor
  EXPECT_THROW(lower_bound_a(1.99), zgb::DomainError);

  const auto& table = zgb::testing::table_100();
  const double a100 = zgb::a_of_t(table, 100);
  EXPECT_LT(lower_bound_a(100).simplified, a100);
  EXPECT_LT(lower_bound_a(100).sharp, a100);
}

TEST(LowerBound, SharpFormOvershootsNearTwo) {
  // tail_lower adds R(T)/T where a consistent lower tail subtracts it, so
  // near T = 2 the sharp lower form exceeds A(T) = 0. The 3/50 floor is
  // unaffected.
  const auto l2 = lower_bound_a(2);
  EXPECT_GT(l2.sharp, 0.0);
  EXPECT_NEAR(l2.sharp, main_term(2) + constants().c_al + 1.454488, 1e-6);

  const double T = 2.0;
  const double l = std::log(T);
  const double tail_consistent = (137 * l * l + 433 * l - 433) / (1000 * T * l * l);
  EXPECT_NEAR(tail_lower(T) - tail_consistent, 2 * big_r(T) / T, 1e-12);
}

TEST(Bounds, LowerBelowUpper) {
  for (double T = 2.222; T < 1e7; T *= 1.01)
    ASSERT_LT(lower_bound_a(T).simplified, upper_bound_a(T).simplified) << T;
  // The sharp forms order correctly only once tail_lower has decayed;
  // the crossing sits near T = 13.886.
  for (double T = 13.9; T < 1e7; T *= 1.01) ASSERT_LT(lower_bound_a(T).sharp, upper_bound_a(T).sharp) << T;
  for (double T = 2.222; T < 13.88; T *= 1.01) EXPECT_GT(lower_bound_a(T).sharp, upper_bound_a(T).sharp) << T;
}

TEST(Bounds, SharpFormsAgainstTable) {
  const auto& table = zgb::testing::table_1000();
  const zgb::ReciprocalSums sums(table);
  // The sharp lower form sits above A on [2, gamma_3) and again on
  // [26.777, gamma_4); from gamma_4 on it holds.
  const double gamma3 = table.ordinates[2].gamma;
  const double gamma4 = table.ordinates[3].gamma;
  std::size_t overshoots = 0;
  for (double T = 2.222; T <= 1000; T *= 1.002) {
    const double a = sums.at(T);
    ASSERT_LT(a, upper_bound_a(T).sharp) << T;
    if (lower_bound_a(T).sharp >= a) {
      ASSERT_LT(T, gamma4) << T;
      ASSERT_TRUE(T < gamma3 || T >= 26.777) << T;
      ++overshoots;
    }
  }
  EXPECT_GT(overshoots, 0u);
  EXPECT_LT(lower_bound_a(26.77).sharp, sums.at(26.77));
  EXPECT_GT(lower_bound_a(26.78).sharp, sums.at(26.78));
  const double before3 = std::nextafter(gamma3, 0.0);
  EXPECT_GT(lower_bound_a(before3).sharp, sums.at(before3));
  EXPECT_LT(lower_bound_a(gamma3).sharp, sums.at(gamma3));
}

}  // namespace
