#include "tailsum/tail_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tailsum/combinatorics.hpp"
#include "tailsum/errors.hpp"

namespace tailsum {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

void check_order(int p) {
  if (p < 1) throw domain_error("order p must be >= 1, got " + std::to_string(p));
}

void check_finite_ascending(const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw domain_error("sample contains a non-finite value");
    if (i > 0 && v[i] < v[i - 1]) throw domain_error("sample values must be non-decreasing");
  }
}

long double factorial(int m) {
  long double f = 1.0L;
  for (int j = 2; j <= m; ++j) f *= j;
  return f;
}

struct ChainEnumerator {
  const SpacingSet& d;
  const std::vector<int>& parts;
  std::size_t lowest;
  long double total = 0.0L;

  // Chooses i_m below `above` for part m, multiplying the running product.
  void walk(std::size_t m, std::size_t above, long double product) {
    const std::size_t remaining = parts.size() - m;
    const int s = parts[m];
    // Leave room for the remaining parts beneath the current index.
    for (std::size_t i = above - 1; i + 1 >= lowest + remaining; --i) {
      const long double term = product * std::pow(static_cast<long double>(d.at(i)), s) / factorial(s);
      if (remaining == 1) {
        total += term * static_cast<long double>(i);
      } else {
        walk(m + 1, i, term);
      }
      if (i == lowest) break;
    }
  }
};

}  // namespace

SortedSample::SortedSample(std::vector<double> ascending) : values_(std::move(ascending)), n_(values_.size()) {
  if (n_ < 2) throw domain_error("a sample needs at least 2 observations");
  check_finite_ascending(values_);
}

SortedSample::SortedSample(std::vector<double> upper, std::size_t n) : values_(std::move(upper)), n_(n) {
  if (n_ < 2) throw domain_error("a sample needs at least 2 observations");
  if (values_.size() > n_) throw domain_error("more stored order statistics than the sample size");
  if (values_.empty()) throw domain_error("an upper sample needs at least one stored value");
  check_finite_ascending(values_);
}

TailWindow TailWindow::make(std::size_t n, std::size_t k, std::size_t l) {
  if (!(l < k && k < n)) {
    throw domain_error("invalid window: need 0 <= l < k < n, got n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                       ", l=" + std::to_string(l));
  }
  return TailWindow{n, k, l};
}

void TailWindow::check_against(const SortedSample& sample) const {
  TailWindow::make(n, k, l);
  if (n != sample.size()) {
    throw domain_error("window n=" + std::to_string(n) + " does not match sample size " + std::to_string(sample.size()));
  }
  if (k + 1 > sample.stored()) {
    throw domain_error("window k=" + std::to_string(k) + " needs " + std::to_string(k + 1) +
                       " upper order statistics, sample stores " + std::to_string(sample.stored()));
  }
}

SortedSample log_transform(std::span<const double> raw) {
  std::vector<double> logs;
  logs.reserve(raw.size());
  bool below_one = false;
  for (double x : raw) {
    if (!(x > 0.0) || !std::isfinite(x)) throw domain_error("log_transform: observations must be finite and > 0");
    if (x < 1.0) below_one = true;
    logs.push_back(std::log(x));
  }
  std::sort(logs.begin(), logs.end());
  SortedSample sample(std::move(logs));
  sample.set_below_support_warning(below_one);
  return sample;
}

SpacingSet spacings(const SortedSample& sample, const TailWindow& window) {
  window.check_against(sample);
  SpacingSet out;
  out.first_index = window.l + 1;
  out.spacings.reserve(window.k - window.l);
  for (std::size_t i = window.l + 1; i <= window.k; ++i) {
    out.spacings.push_back(sample.from_top(i) - sample.from_top(i + 1));
  }
  return out;
}

double hill(const SortedSample& sample, const TailWindow& window) {
  const SpacingSet d = spacings(sample, window);
  CompensatedSum sum;
  for (std::size_t j = d.first_index; j <= d.last_index(); ++j) sum.add(static_cast<double>(j) * d.at(j));
  return sum.value() / static_cast<double>(window.k);
}

double dedh_moment(const SortedSample& sample, const TailWindow& window, int p) {
  check_order(p);
  window.check_against(sample);
  if (window.l != 0) throw domain_error("dedh_moment requires l == 0");
  const double threshold = sample.from_top(window.k + 1);
  const double inv_fact = static_cast<double>(1.0L / factorial(p));
  CompensatedSum sum;
  for (std::size_t i = 1; i <= window.k; ++i) sum.add(std::pow(sample.from_top(i) - threshold, p) * inv_fact);
  return sum.value() / static_cast<double>(window.k);
}

double t_naive(const SortedSample& sample, const TailWindow& window, int p, double budget) {
  check_order(p);
  const SpacingSet d = spacings(sample, window);
  const int width = static_cast<int>(window.k - window.l);

  double chains = 0.0;
  for (int h = 1; h <= std::min(p, width); ++h) {
    chains += std::exp(std::lgamma(p) - std::lgamma(h) - std::lgamma(p - h + 1)) *
              std::exp(std::lgamma(width + 1) - std::lgamma(h + 1) - std::lgamma(width - h + 1));
  }
  if (chains > budget) {
    throw resource_error("t_naive would enumerate ~" + std::to_string(static_cast<long long>(chains)) +
                         " index chains (budget " + std::to_string(static_cast<long long>(budget)) +
                         "); use t_fast for this window");
  }

  long double total = 0.0L;
  for (int h = 1; h <= std::min(p, width); ++h) {
    for (const Composition& c : compositions(p, h)) {
      ChainEnumerator walker{d, c.parts, d.first_index};
      walker.walk(0, window.k + 1, 1.0L);
      total += walker.total;
    }
  }
  return static_cast<double>(total / static_cast<long double>(window.k));
}

std::vector<double> t_ladder(const SortedSample& sample, const TailWindow& window, int pmax) {
  check_order(pmax);
  const SpacingSet d = spacings(sample, window);
  const auto P = static_cast<std::size_t>(pmax);

  std::vector<long double> inv_fact(P + 1, 1.0L);
  for (std::size_t q = 1; q <= P; ++q) inv_fact[q] = inv_fact[q - 1] / static_cast<long double>(q);

  // F[m] is the m-fold iterated integral of the (integer-scaled) empirical
  // tail from the current point up to Y_{n-l,n}. Walk intervals downward.
  std::vector<long double> F(P + 1, 0.0L);
  std::vector<long double> next(P + 1, 0.0L);
  std::vector<long double> powers(P + 1, 1.0L);
  for (std::size_t i = d.first_index; i <= d.last_index(); ++i) {
    const long double width = d.at(i);
    const auto tail = static_cast<long double>(i);
    for (std::size_t q = 1; q <= P; ++q) powers[q] = powers[q - 1] * width;
    for (std::size_t m = 1; m <= P; ++m) {
      long double value = tail * powers[m] * inv_fact[m];
      for (std::size_t q = 0; q + 1 <= m; ++q) value += F[m - q] * powers[q] * inv_fact[q];
      next[m] = value;
    }
    std::swap(F, next);
  }

  std::vector<double> out(P);
  for (std::size_t m = 1; m <= P; ++m) out[m - 1] = static_cast<double>(F[m] / static_cast<long double>(window.k));
  return out;
}

double t_fast(const SortedSample& sample, const TailWindow& window, int p) {
  return t_ladder(sample, window, p).back();
}

double gamma_hat_from(double t_value, int p) {
  check_order(p);
  if (!(t_value > 0.0)) throw undefined_estimate("index estimate undefined: T_n(p) must be > 0");
  return std::pow(t_value, -1.0 / p);
}

double gamma_hat(const SortedSample& sample, const TailWindow& window, int p) {
  return gamma_hat_from(t_fast(sample, window, p), p);
}

bool window_degenerate(const SortedSample& sample, const TailWindow& window) {
  const SpacingSet d = spacings(sample, window);
  return std::all_of(d.spacings.begin(), d.spacings.end(), [](double x) { return x == 0.0; });
}

}  // namespace tailsum
