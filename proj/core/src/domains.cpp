#include "tailsum/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tailsum/errors.hpp"
#include "tailsum/quadrature.hpp"
#include "tailsum/rng.hpp"

namespace tailsum {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Above this distance to the endpoint the PowerEndpoint series converges too
// slowly (radius 2*pi) and quadrature takes over.
constexpr double kSeriesReach = 4.0;

void check_order(int p) {
  if (p < 1) throw domain_error("m_p: order p must be >= 1");
}

double inverse_factorial(int m) {
  double f = 1.0;
  for (int j = 2; j <= m; ++j) f *= j;
  return 1.0 / f;
}

// m_p(x) for x < 0, where the survival function is 1 on [x, 0):
//   (-x)^p / p! + sum_{j=0}^{p-1} (-x)^{p-1-j} / (p-1-j)! * m_{j+1}(0).
template <class AtZero>
double extend_below_support(int p, double x, AtZero m_at_zero) {
  const double d = -x;
  double total = std::pow(d, p) * inverse_factorial(p);
  for (int j = 0; j < p; ++j) total += std::pow(d, p - 1 - j) * inverse_factorial(p - 1 - j) * m_at_zero(j + 1);
  return total;
}

// A^gamma * int_0^L (L-s)^{p-1}/(p-1)! (1 - e^{-s})^gamma ds with
// (1 - e^{-s})^gamma = s^gamma * sum_q c_q s^q, integrating each power by a
// Beta integral.
double power_endpoint_series(double gamma, double scale, int p, double length) {
  if (length == 0.0) return 0.0;
  constexpr int kMaxTerms = 400;
  // a_m: coefficients of (1 - e^{-s}) / s.
  std::vector<double> a(kMaxTerms + 1);
  a[0] = 1.0;
  for (int m = 1; m <= kMaxTerms; ++m) a[m] = -a[m - 1] / (m + 1);
  std::vector<double> c(kMaxTerms + 1);
  c[0] = 1.0;

  double weight = std::exp((p + gamma) * std::log(length) + std::lgamma(gamma + 1.0) - std::lgamma(gamma + p + 1.0));
  double total = weight;
  int quiet = 0;
  for (int q = 1; q <= kMaxTerms; ++q) {
    double acc = 0.0;
    for (int k = 1; k <= q; ++k) acc += ((gamma + 1.0) * k - q) * a[k] * c[q - k];
    c[q] = acc / q;
    weight *= length * (gamma + q) / (gamma + q + p);
    const double term = c[q] * weight;
    total += term;
    quiet = std::fabs(term) <= 1e-18 * std::fabs(total) ? quiet + 1 : 0;
    if (quiet >= 3) break;
  }
  return std::pow(scale, gamma) * total;
}

}  // namespace

TestDistribution TestDistribution::pareto(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw domain_error("Pareto: gamma must be finite and > 0");
  return TestDistribution(Kind::Pareto, gamma, kInf);
}

TestDistribution TestDistribution::power_endpoint(double gamma, double x0) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw domain_error("PowerEndpoint: gamma must be finite and > 0");
  if (!(x0 > 1.0) || !std::isfinite(x0)) throw domain_error("PowerEndpoint: x0 must be finite and > 1");
  return TestDistribution(Kind::PowerEndpoint, gamma, x0);
}

TestDistribution TestDistribution::stretched_tail() { return TestDistribution(Kind::StretchedTail, 1.0, kInf); }

std::string TestDistribution::name() const {
  switch (kind_) {
    case Kind::Pareto: return "pareto";
    case Kind::PowerEndpoint: return "power";
    case Kind::StretchedTail: return "stretched";
  }
  return "unknown";
}

Domain TestDistribution::domain() const {
  switch (kind_) {
    case Kind::Pareto: return Domain::frechet(gamma_);
    case Kind::PowerEndpoint: return Domain::weibull(gamma_);
    case Kind::StretchedTail: return Domain::gumbel();
  }
  return Domain::gumbel();
}

double TestDistribution::log_endpoint() const { return kind_ == Kind::PowerEndpoint ? std::log(x0_) : kInf; }

double TestDistribution::cdf(double x) const {
  if (x <= 1.0) return 0.0;
  switch (kind_) {
    case Kind::Pareto: return -std::expm1(-gamma_ * std::log(x));
    case Kind::PowerEndpoint:
      if (x >= x0_) return 1.0;
      return 1.0 - std::pow((x0_ - x) / (x0_ - 1.0), gamma_);
    case Kind::StretchedTail: {
      const double y = std::log(x);
      return -std::expm1(-y * y);
    }
  }
  return 0.0;
}

double TestDistribution::survival_log(double y) const {
  if (y <= 0.0) return 1.0;
  switch (kind_) {
    case Kind::Pareto: return std::exp(-gamma_ * y);
    case Kind::PowerEndpoint: {
      const double x = std::exp(y);
      if (x >= x0_) return 0.0;
      return std::pow((x0_ - x) / (x0_ - 1.0), gamma_);
    }
    case Kind::StretchedTail: return std::exp(-y * y);
  }
  return 0.0;
}

double TestDistribution::log_quantile_upper(double v) const {
  if (!(v > 0.0 && v < 1.0)) throw domain_error("log_quantile_upper: v must lie in (0, 1)");
  switch (kind_) {
    case Kind::Pareto: return -std::log(v) / gamma_;
    case Kind::PowerEndpoint: return std::log(x0_ - (x0_ - 1.0) * std::pow(v, 1.0 / gamma_));
    case Kind::StretchedTail: return std::sqrt(-std::log(v));
  }
  return 0.0;
}

double quantile(const TestDistribution& dist, double u) {
  if (!(u > 0.0 && u < 1.0)) throw domain_error("quantile: u must lie in (0, 1)");
  const double tail = 1.0 - u;
  switch (dist.kind()) {
    case TestDistribution::Kind::Pareto: return std::exp(-std::log1p(-u) / dist.gamma());
    case TestDistribution::Kind::PowerEndpoint:
      return dist.x0() - (dist.x0() - 1.0) * std::pow(tail, 1.0 / dist.gamma());
    case TestDistribution::Kind::StretchedTail: return std::exp(std::sqrt(-std::log1p(-u)));
  }
  return 0.0;
}

SortedSample sample_iid(const TestDistribution& dist, std::uint64_t seed, std::size_t n) {
  if (n < 2) throw domain_error("sample_iid: n must be >= 2");
  const CounterStream stream(seed);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = dist.log_quantile_upper(stream.uniform(i));
  std::sort(values.begin(), values.end());
  return SortedSample(std::move(values));
}

SortedSample sample_upper(const TestDistribution& dist, std::uint64_t seed, std::size_t n, std::size_t m) {
  if (n < 2) throw domain_error("sample_upper: n must be >= 2");
  if (m < 1 || m > n) throw domain_error("sample_upper: need 1 <= m <= n");
  const CounterStream stream(seed);
  std::vector<double> survival(n);
  for (std::size_t i = 0; i < n; ++i) survival[i] = stream.uniform(i);
  // The largest Y correspond to the smallest survival probabilities.
  std::nth_element(survival.begin(), survival.begin() + static_cast<std::ptrdiff_t>(m - 1), survival.end());
  survival.resize(m);
  std::sort(survival.begin(), survival.end(), std::greater<>());
  std::vector<double> values(m);
  for (std::size_t i = 0; i < m; ++i) values[i] = dist.log_quantile_upper(survival[i]);
  return SortedSample(std::move(values), n);
}

double m_p_quadrature(const TestDistribution& dist, int p, double x, double rel_tol) {
  check_order(p);
  const double y0 = dist.log_endpoint();
  if (!(x < y0)) throw domain_error("m_p: x must lie below the upper endpoint");
  const double inv_fact = inverse_factorial(p - 1);
  const auto integrand = [&](double t) { return std::pow(t - x, p - 1) * inv_fact * dist.survival_log(t); };

  double total = 0.0;
  double lo = x;
  if (x < 0.0) {
    total += quadrature::adaptive_simpson(integrand, x, std::min(0.0, y0), rel_tol);
    lo = 0.0;
  }
  if (std::isfinite(y0)) return total + quadrature::adaptive_simpson(integrand, lo, y0, rel_tol);
  return total + quadrature::integrate_to_infinity(integrand, lo, 1.0, rel_tol);
}

double m_p_value(const TestDistribution& dist, int p, double x) {
  check_order(p);
  const double y0 = dist.log_endpoint();
  if (!(x < y0)) throw domain_error("m_p: x must lie below the upper endpoint");
  if (x < 0.0) return extend_below_support(p, x, [&](int j) { return m_p_value(dist, j, 0.0); });

  switch (dist.kind()) {
    case TestDistribution::Kind::Pareto:
      return std::pow(dist.gamma(), -p) * std::exp(-dist.gamma() * x);
    case TestDistribution::Kind::PowerEndpoint: {
      const double length = y0 - x;
      if (length > kSeriesReach) return m_p_quadrature(dist, p, x);
      return power_endpoint_series(dist.gamma(), dist.x0() / (dist.x0() - 1.0), p, length);
    }
    case TestDistribution::Kind::StretchedTail: return m_p_quadrature(dist, p, x, 1e-10);
  }
  return 0.0;
}

double threshold(const TestDistribution& dist, std::size_t n, std::size_t k) {
  TailWindow::make(n, k, 0);
  return dist.log_quantile_upper(static_cast<double>(k) / static_cast<double>(n));
}

double tau_p(const TestDistribution& dist, int p, const TailWindow& window) {
  return tau_p_at(dist, p, window, threshold(dist, window.n, window.k));
}

double tau_p_at(const TestDistribution& dist, int p, const TailWindow& window, double x) {
  TailWindow::make(window.n, window.k, window.l);
  return static_cast<double>(window.n) / static_cast<double>(window.k) * m_p_value(dist, p, x);
}

}  // namespace tailsum
