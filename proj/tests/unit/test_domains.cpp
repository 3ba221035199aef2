#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tailsum/domains.hpp"
#include "tailsum/errors.hpp"
#include "tailsum/quadrature.hpp"

using namespace tailsum;

namespace {

std::vector<TestDistribution> all_distributions() {
  return {TestDistribution::pareto(1.0), TestDistribution::pareto(2.5), TestDistribution::power_endpoint(1.0, 2.0),
          TestDistribution::power_endpoint(3.0, 5.0), TestDistribution::stretched_tail()};
}

}  // namespace

TEST(Quantile, Examples) {
  EXPECT_DOUBLE_EQ(quantile(TestDistribution::pareto(2.0), 0.75), 2.0);
  EXPECT_DOUBLE_EQ(quantile(TestDistribution::power_endpoint(1.0, 2.0), 0.5), 1.5);
  EXPECT_NEAR(quantile(TestDistribution::stretched_tail(), 1.0 - std::exp(-1.0)), std::numbers::e, 1e-12);
  EXPECT_THROW(quantile(TestDistribution::pareto(1.0), 0.0), domain_error);
  EXPECT_THROW(quantile(TestDistribution::pareto(1.0), 1.0), domain_error);
}

TEST(Quantile, InvertsTheCdfOnAGrid) {
  for (const auto& d : all_distributions()) {
    double worst = 0.0;
    double previous = 0.0;
    for (int i = 1; i <= 1000; ++i) {
      const double u = i / 1001.0;
      const double x = quantile(d, u);
      EXPECT_GT(x, previous);
      previous = x;
      worst = std::max(worst, std::fabs(d.cdf(x) - u));
    }
    EXPECT_LE(worst, 1e-12) << d.name();
  }
}

TEST(Quantile, LogScaleUpperQuantileMatches) {
  for (const auto& d : all_distributions()) {
    for (double v : {0.9, 0.5, 0.1, 1e-3, 1e-6}) {
      EXPECT_NEAR(d.log_quantile_upper(v), std::log(quantile(d, 1.0 - v)), 1e-9) << d.name() << " v=" << v;
      EXPECT_NEAR(d.survival_log(d.log_quantile_upper(v)), v, 1e-12 + 1e-9 * v);
    }
  }
}

TEST(Construction, ParameterChecks) {
  EXPECT_THROW(TestDistribution::pareto(0.0), domain_error);
  EXPECT_THROW(TestDistribution::power_endpoint(1.0, 1.0), domain_error);
  EXPECT_THROW(TestDistribution::power_endpoint(-1.0, 3.0), domain_error);
  EXPECT_EQ(TestDistribution::pareto(1.0).domain().kind, Domain::Kind::Frechet);
  EXPECT_EQ(TestDistribution::power_endpoint(2.0, 3.0).domain().kind, Domain::Kind::Weibull);
  EXPECT_EQ(TestDistribution::stretched_tail().domain().kind, Domain::Kind::Gumbel);
}

TEST(Sampling, DeterministicAndSorted) {
  const auto d = TestDistribution::pareto(1.0);
  const SortedSample a = sample_iid(d, 17, 10);
  const SortedSample b = sample_iid(d, 17, 10);
  const SortedSample c = sample_iid(d, 18, 10);
  ASSERT_EQ(a.stored(), 10U);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(a.values()[i], b.values()[i]);
  EXPECT_NE(a.values()[9], c.values()[9]);
  EXPECT_TRUE(std::is_sorted(a.values().begin(), a.values().end()));
}

TEST(Sampling, ParetoLogScaleIsUnitExponential) {
  const SortedSample s = sample_iid(TestDistribution::pareto(1.0), 1, 100000);
  double sum = 0.0;
  for (double y : s.values()) sum += y;
  EXPECT_NEAR(sum / 1e5, 1.0, 0.02);
}

TEST(Sampling, UpperSampleIsTopOfFullSample) {
  for (const auto& d : all_distributions()) {
    const SortedSample full = sample_iid(d, 77, 5000);
    const SortedSample top = sample_upper(d, 77, 5000, 120);
    ASSERT_EQ(top.size(), 5000U);
    ASSERT_EQ(top.stored(), 120U);
    for (std::size_t i = 1; i <= 120; ++i) EXPECT_EQ(top.from_top(i), full.from_top(i)) << d.name();
  }
  EXPECT_THROW(sample_upper(TestDistribution::pareto(1.0), 1, 10, 11), domain_error);
  EXPECT_THROW(sample_iid(TestDistribution::pareto(1.0), 1, 1), domain_error);
}

TEST(TailMoments, Examples) {
  EXPECT_DOUBLE_EQ(m_p_value(TestDistribution::pareto(1.0), 2, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(m_p_value(TestDistribution::pareto(2.0), 3, 0.0), 0.125);
  EXPECT_NEAR(m_p_value(TestDistribution::stretched_tail(), 1, 0.0), std::sqrt(std::numbers::pi) / 2, 1e-9);
  EXPECT_THROW(m_p_value(TestDistribution::power_endpoint(1.0, 2.0), 1, std::log(2.0)), domain_error);
  EXPECT_THROW(m_p_value(TestDistribution::pareto(1.0), 0, 1.0), domain_error);
}

TEST(TailMoments, PowerEndpointLinearCaseClosedForm) {
  // gamma = 1, x0 = 2: 1 - G(y) = 2 - e^y on [0, log 2], so m_1(0) = 2 log 2 - 1.
  EXPECT_NEAR(m_p_value(TestDistribution::power_endpoint(1.0, 2.0), 1, 0.0), 2 * std::numbers::ln2 - 1, 1e-13);
}

TEST(TailMoments, AnalyticAgreesWithQuadrature) {
  for (const auto& d : all_distributions()) {
    const double top = std::isfinite(d.log_endpoint()) ? d.log_endpoint() : 6.0;
    for (double x : {-0.5, 0.0, 0.3 * top, 0.8 * top}) {
      for (int p = 1; p <= 4; ++p) {
        const double a = m_p_value(d, p, x);
        const double q = m_p_quadrature(d, p, x);
        EXPECT_NEAR(a, q, 1e-8 * std::max(1e-12, q)) << d.name() << " p=" << p << " x=" << x;
      }
    }
  }
}

TEST(TailMoments, IteratedIntegralRecursionAndMonotonicity) {
  for (const auto& d : all_distributions()) {
    const double y0 = d.log_endpoint();
    for (int p = 2; p <= 4; ++p) {
      for (double x : {0.0, 0.2, 0.5}) {
        if (!(x < y0)) continue;
        const auto lower = [&](double t) { return t < y0 ? m_p_value(d, p - 1, t) : 0.0; };
        const double integral = std::isfinite(y0) ? quadrature::adaptive_simpson(lower, x, y0, 1e-11)
                                                  : quadrature::integrate_to_infinity(lower, x, 1.0, 1e-11);
        EXPECT_NEAR(m_p_value(d, p, x), integral, 1e-7 * integral) << d.name() << " p=" << p << " x=" << x;
      }
      double previous = INFINITY;
      for (double x = -1.0; x < std::min(y0, 5.0); x += 0.25) {
        const double m = m_p_value(d, p, x);
        EXPECT_GE(m, 0.0);
        EXPECT_LT(m, previous);
        previous = m;
      }
    }
  }
}

TEST(Centering, ParetoTauIsGammaPower) {
  for (double g : {0.5, 1.0, 2.0}) {
    const auto d = TestDistribution::pareto(g);
    for (int p = 1; p <= 4; ++p) {
      EXPECT_NEAR(tau_p(d, p, TailWindow::make(100000, 1000)), std::pow(g, -p), 1e-12 * std::pow(g, -p));
      EXPECT_NEAR(tau_p(d, p, TailWindow::make(500, 7)), std::pow(g, -p), 1e-12 * std::pow(g, -p));
    }
  }
}

TEST(Centering, TauAtThresholdEqualsTau) {
  for (const auto& d : all_distributions()) {
    const TailWindow w = TailWindow::make(10000, 200);
    const double x = threshold(d, w.n, w.k);
    EXPECT_EQ(tau_p_at(d, 2, w, x), tau_p(d, 2, w));
    EXPECT_NEAR(d.survival_log(x), 0.02, 1e-12);
  }
}

TEST(Centering, PowerEndpointTauTwoWays) {
  const auto d = TestDistribution::power_endpoint(1.0, 2.0);
  const TailWindow w = TailWindow::make(100000, 1000);
  const double x = threshold(d, w.n, w.k);
  const double series = tau_p(d, 1, w);
  const double quad = 100.0 * m_p_quadrature(d, 1, x);
  EXPECT_NEAR(series, quad, 1e-8 * quad);
}
