#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tailsum/errors.hpp"
#include "tailsum/tail_estimators.hpp"

using namespace tailsum;

namespace {

const double kLog2 = std::numbers::ln2;

SortedSample equal_spacing_fixture() {
  std::vector<double> raw{2, 4, 8, 16, 32};
  return log_transform(raw);
}

double rel_err(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

}  // namespace

TEST(LogTransform, Examples) {
  const std::vector<double> raw{1.0, std::exp(1.0), std::exp(2.0)};
  const SortedSample s = log_transform(raw);
  EXPECT_DOUBLE_EQ(s.values()[0], 0.0);
  EXPECT_DOUBLE_EQ(s.values()[1], 1.0);
  EXPECT_DOUBLE_EQ(s.values()[2], 2.0);
  EXPECT_FALSE(s.below_support_warning());

  const std::vector<double> halves{0.5, 2.0};
  const SortedSample w = log_transform(halves);
  EXPECT_TRUE(w.below_support_warning());
  EXPECT_DOUBLE_EQ(w.values()[0], -kLog2);
  EXPECT_DOUBLE_EQ(w.values()[1], kLog2);
}

TEST(LogTransform, SortsAndRejectsNonPositive) {
  const std::vector<double> raw{8, 2, 4};
  const SortedSample s = log_transform(raw);
  EXPECT_DOUBLE_EQ(s.values()[2], 3 * kLog2);
  const std::vector<double> bad{1.0, 0.0, 2.0};
  EXPECT_THROW(log_transform(bad), domain_error);
  const std::vector<double> negative{-1.0, 2.0};
  EXPECT_THROW(log_transform(negative), domain_error);
}

TEST(SortedSampleTest, Invariants) {
  EXPECT_THROW(SortedSample(std::vector<double>{1.0}), domain_error);
  EXPECT_THROW(SortedSample(std::vector<double>{2.0, 1.0}), domain_error);
  EXPECT_THROW(SortedSample(std::vector<double>{1.0, NAN}), domain_error);
  EXPECT_THROW(SortedSample(std::vector<double>{1.0, 2.0, 3.0}, 2), domain_error);
}

TEST(Window, Validation) {
  EXPECT_NO_THROW(TailWindow::make(5, 3, 0));
  EXPECT_THROW(TailWindow::make(5, 5, 0), domain_error);
  EXPECT_THROW(TailWindow::make(5, 3, 3), domain_error);
  EXPECT_THROW(TailWindow::make(5, 0, 0), domain_error);
}

TEST(Spacings, Examples) {
  const SortedSample s(std::vector<double>{0, 1, 3, 6});
  const SpacingSet d = spacings(s, TailWindow::make(4, 2));
  ASSERT_EQ(d.spacings.size(), 2U);
  EXPECT_DOUBLE_EQ(d.at(1), 3.0);
  EXPECT_DOUBLE_EQ(d.at(2), 2.0);

  const SortedSample flat(std::vector<double>(6, 1.5));
  for (double x : spacings(flat, TailWindow::make(6, 4, 1)).spacings) EXPECT_EQ(x, 0.0);

  const SpacingSet full = spacings(s, TailWindow::make(4, 3));
  EXPECT_EQ(full.spacings.size(), 3U);
  EXPECT_THROW(spacings(s, TailWindow{4, 4, 0}), domain_error);
}

TEST(Spacings, UpperSampleMustStoreEnough) {
  const SortedSample upper(std::vector<double>{5.0, 6.0, 7.0}, 100);
  EXPECT_NO_THROW(spacings(upper, TailWindow::make(100, 2)));
  EXPECT_THROW(spacings(upper, TailWindow::make(100, 3)), domain_error);
  EXPECT_THROW(spacings(upper, TailWindow::make(99, 2)), domain_error);
}

TEST(Hill, Examples) {
  const SortedSample s = equal_spacing_fixture();
  EXPECT_NEAR(hill(s, TailWindow::make(5, 3)), 2 * kLog2, 1e-15);

  const SortedSample arithmetic(std::vector<double>{0, 1, 2, 3, 4, 5, 6});
  EXPECT_DOUBLE_EQ(hill(arithmetic, TailWindow::make(7, 3)), 2.0);
  // l = 1 drops the j = 1 term: (2 + 3) / 3.
  EXPECT_DOUBLE_EQ(hill(arithmetic, TailWindow::make(7, 3, 1)), 5.0 / 3.0);
}

TEST(EqualSpacingFixture, AllEstimatorsAgree) {
  const SortedSample s = equal_spacing_fixture();
  const TailWindow w = TailWindow::make(5, 3);
  const double t1 = 2 * kLog2;
  const double t2 = 7 * kLog2 * kLog2 / 3;
  EXPECT_NEAR(t_naive(s, w, 1), t1, 1e-15);
  EXPECT_NEAR(t_fast(s, w, 1), t1, 1e-15);
  EXPECT_NEAR(t_naive(s, w, 2), t2, 1e-15);
  EXPECT_NEAR(t_fast(s, w, 2), t2, 1e-15);
  EXPECT_NEAR(dedh_moment(s, w, 2), t2, 1e-15);
  EXPECT_NEAR(t_fast(s, w, 2), 1.1210570324758034, 1e-15);
  const auto ladder = t_ladder(s, w, 2);
  ASSERT_EQ(ladder.size(), 2U);
  EXPECT_NEAR(ladder[0], 1.386294, 1e-6);
  EXPECT_NEAR(ladder[1], t2, 1e-15);
}

TEST(NaiveChains, HandExpansionForSmallWindows) {
  // k = 2, l = 0, p = 2: (1/2)[1*D1^2/2 + 2*D2^2/2 + 1*D2*D1] with strict chains.
  const SortedSample s(std::vector<double>{0.0, 1.0, 1.5, 3.5});
  const TailWindow w = TailWindow::make(4, 2);
  const double d1 = 2.0, d2 = 0.5;
  const double expected = (d1 * d1 / 2 + 2 * d2 * d2 / 2 + d2 * d1) / 2;
  EXPECT_NEAR(t_naive(s, w, 2), expected, 1e-15);
  EXPECT_NEAR(t_fast(s, w, 2), expected, 1e-15);
}

TEST(Equivalence, NaiveFastAndMomentOnRandomSamples) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 5 + rng() % 80;
    const SortedSample s(tailsum::testing::random_ascending(rng, n, trial % 3 == 0));
    const std::size_t k = 1 + rng() % std::min<std::size_t>(n - 1, 40);
    const std::size_t l = trial % 2 == 0 ? 0 : rng() % k;
    const TailWindow w = TailWindow::make(n, k, l);
    const auto ladder = t_ladder(s, w, 5);
    for (int p = 1; p <= 5; ++p) {
      const double fast = t_fast(s, w, p);
      EXPECT_EQ(fast, ladder[static_cast<std::size_t>(p - 1)]);
      EXPECT_LE(rel_err(t_naive(s, w, p), fast), 1e-10) << "trial " << trial << " p " << p;
      if (l == 0) EXPECT_LE(rel_err(dedh_moment(s, w, p), fast), 1e-10) << "trial " << trial << " p " << p;
    }
    EXPECT_LE(rel_err(t_fast(s, w, 1), hill(s, w)), 1e-12);
  }
}

TEST(Equivalence, FiftyTwentyOrderFour) {
  std::mt19937_64 rng(99);
  const SortedSample s(tailsum::testing::random_ascending(rng, 50));
  const TailWindow w = TailWindow::make(50, 20);
  EXPECT_LE(rel_err(t_naive(s, w, 4), t_fast(s, w, 4)), 1e-10);
}

TEST(Invariants, ShiftAndScale) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> base = tailsum::testing::random_ascending(rng, 60);
    const TailWindow w = TailWindow::make(60, 25, trial % 4);
    const double shift = 3.25;
    const double c = 1.5 + 0.25 * trial;
    std::vector<double> shifted = base, scaled = base;
    for (auto& x : shifted) x += shift;
    for (auto& x : scaled) x *= c;
    const SortedSample s0(base), s1(shifted), s2(scaled);
    for (int p = 1; p <= 5; ++p) {
      const double t = t_fast(s0, w, p);
      EXPECT_LE(rel_err(t_fast(s1, w, p), t), 1e-12);
      EXPECT_LE(std::fabs(t_fast(s2, w, p) - std::pow(c, p) * t), 1e-11 * std::pow(c, p) * std::max(1.0, t));
      EXPECT_GE(t, 0.0);
    }
    EXPECT_LE(std::fabs(gamma_hat(s2, w, 2) * c - gamma_hat(s0, w, 2)), 1e-11 * gamma_hat(s0, w, 2));
  }
}

TEST(Invariants, ZeroIffDegenerateWindow) {
  const SortedSample ties(std::vector<double>{0.0, 1.0, 2.0, 2.0, 2.0, 2.0});
  const TailWindow w = TailWindow::make(6, 3);
  EXPECT_TRUE(window_degenerate(ties, w));
  for (int p = 1; p <= 4; ++p) {
    EXPECT_EQ(t_fast(ties, w, p), 0.0);
    EXPECT_EQ(t_naive(ties, w, p), 0.0);
    EXPECT_EQ(dedh_moment(ties, w, p), 0.0);
  }
  EXPECT_THROW(gamma_hat(ties, w, 1), undefined_estimate);

  const TailWindow wider = TailWindow::make(6, 4);
  EXPECT_FALSE(window_degenerate(ties, wider));
  EXPECT_GT(t_fast(ties, wider, 2), 0.0);
}

TEST(GammaHat, Arithmetic) {
  EXPECT_DOUBLE_EQ(gamma_hat_from(0.25, 2), 2.0);
  for (int p = 1; p <= 5; ++p) EXPECT_DOUBLE_EQ(gamma_hat_from(1.0, p), 1.0);
  EXPECT_THROW(gamma_hat_from(0.0, 1), undefined_estimate);
  EXPECT_THROW(gamma_hat_from(1.0, 0), domain_error);
}

TEST(ErrorPaths, OrderAndWindowChecks) {
  const SortedSample s = equal_spacing_fixture();
  const TailWindow w = TailWindow::make(5, 3);
  EXPECT_THROW(t_naive(s, w, 0), domain_error);
  EXPECT_THROW(t_fast(s, w, 0), domain_error);
  EXPECT_THROW(t_ladder(s, w, 0), domain_error);
  EXPECT_THROW(dedh_moment(s, TailWindow::make(5, 3, 1), 2), domain_error);
  EXPECT_THROW(hill(s, TailWindow{5, 5, 0}), domain_error);
}

TEST(ErrorPaths, NaiveBudget) {
  std::mt19937_64 rng(3);
  const SortedSample s(tailsum::testing::random_ascending(rng, 2000));
  const TailWindow w = TailWindow::make(2000, 1500);
  EXPECT_THROW(t_naive(s, w, 5), resource_error);
  EXPECT_NO_THROW(t_naive(s, w, 1));
  EXPECT_THROW(t_naive(s, TailWindow::make(2000, 60), 3, 10.0), resource_error);
}
