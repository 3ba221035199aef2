#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "tailsum/limit_process.hpp"
#include "tailsum/tail_estimators.hpp"

namespace tailsum {

/// One canonical distribution per domain of attraction, all supported on
/// [1, x0) so that the log-scale variable Y = log X is non-negative.
///
///   Pareto(gamma):            F(x) = 1 - x^{-gamma},                      x >= 1
///   PowerEndpoint(gamma, x0): F(x) = 1 - ((x0 - x) / (x0 - 1))^gamma,     1 <= x <= x0
///   StretchedTail:            1 - G(y) = exp(-y^2) on the log scale,      y >= 0
class TestDistribution {
 public:
  enum class Kind { Pareto, PowerEndpoint, StretchedTail };

  static TestDistribution pareto(double gamma);
  static TestDistribution power_endpoint(double gamma, double x0);
  static TestDistribution stretched_tail();

  Kind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  double x0() const { return x0_; }
  std::string name() const;

  /// Domain of attraction of the log-scale variable (Frechet, Weibull, Gumbel).
  Domain domain() const;

  /// Upper endpoint y0 of the log-scale support; +inf when unbounded.
  double log_endpoint() const;

  /// F on the X scale.
  double cdf(double x) const;

  /// 1 - G(y) on the log scale.
  double survival_log(double y) const;

  /// The log-scale value y with 1 - G(y) = v, for v in (0, 1). Evaluating
  /// from the survival probability keeps full precision deep in the tail.
  double log_quantile_upper(double v) const;

 private:
  TestDistribution(Kind kind, double gamma, double x0) : kind_(kind), gamma_(gamma), x0_(x0) {}

  Kind kind_;
  double gamma_;
  double x0_;
};

/// Exact inverse of F on the X scale, u in (0, 1).
double quantile(const TestDistribution& dist, double u);

/// n log-scale draws from the counter-based stream keyed by `seed`, sorted
/// ascending. Draw i uses counter i, so output is platform- and
/// thread-independent.
SortedSample sample_iid(const TestDistribution& dist, std::uint64_t seed, std::size_t n);

/// The largest m order statistics of exactly the sample sample_iid would
/// return for (dist, seed, n), without sorting all n values.
SortedSample sample_upper(const TestDistribution& dist, std::uint64_t seed, std::size_t n, std::size_t m);

/// m_p(x) = int_x^{y0} (t - x)^{p-1}/(p-1)! (1 - G(t)) dt, the p-fold iterated
/// tail integral. Closed form for Pareto, Beta-integral series for
/// PowerEndpoint, adaptive quadrature for StretchedTail.
double m_p_value(const TestDistribution& dist, int p, double x);

/// Same quantity by direct adaptive quadrature, independent of m_p_value's
/// closed forms.
double m_p_quadrature(const TestDistribution& dist, int p, double x, double rel_tol = 1e-11);

/// x_n = G^{-1}(1 - k/n).
double threshold(const TestDistribution& dist, std::size_t n, std::size_t k);

/// (n/k) m_p(x_n).
double tau_p(const TestDistribution& dist, int p, const TailWindow& window);

/// (n/k) m_p(x) at an arbitrary, possibly random, threshold x.
double tau_p_at(const TestDistribution& dist, int p, const TailWindow& window, double x);

}  // namespace tailsum
