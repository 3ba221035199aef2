#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tailsum {

/// Ascending log-scale order statistics Y_{1,n} <= ... <= Y_{n,n}.
///
/// A sample may keep only its upper part: `values()` then holds the largest
/// `stored()` order statistics of a sample of total size `size()`. Every
/// statistic here reads at most Y_{n-k,n} .. Y_{n,n}, so a window is usable
/// as long as k + 1 <= stored().
class SortedSample {
 public:
  /// Full sample; `ascending` must be non-decreasing and finite, size >= 2.
  explicit SortedSample(std::vector<double> ascending);

  /// The largest `upper.size()` order statistics of a sample of size n.
  SortedSample(std::vector<double> upper, std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t stored() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

  /// Y_{n-i+1,n}: i = 1 is the maximum. Requires 1 <= i <= stored().
  double from_top(std::size_t i) const { return values_[values_.size() - i]; }

  /// Set when the raw data had observations below 1 (negative log values).
  bool below_support_warning() const { return below_support_; }
  void set_below_support_warning(bool flag) { below_support_ = flag; }

 private:
  std::vector<double> values_;
  std::size_t n_;
  bool below_support_ = false;
};

/// Index triple (n, k, l) with 0 <= l < k < n.
struct TailWindow {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t l = 0;

  /// Throws domain_error when the triple violates 0 <= l < k < n.
  static TailWindow make(std::size_t n, std::size_t k, std::size_t l = 0);

  /// Throws domain_error if the window does not fit `sample`.
  void check_against(const SortedSample& sample) const;
};

/// D_i = Y_{n-i+1,n} - Y_{n-i,n} for i = l+1 .. k.
struct SpacingSet {
  std::size_t first_index = 1;
  std::vector<double> spacings;

  double at(std::size_t i) const { return spacings[i - first_index]; }
  std::size_t last_index() const { return first_index + spacings.size() - 1; }
};

/// Natural logs of positive observations, sorted ascending. Values below 1
/// are accepted but raise the sample's below-support warning.
SortedSample log_transform(std::span<const double> raw);

SpacingSet spacings(const SortedSample& sample, const TailWindow& window);

/// (1/k) sum_{j=l+1}^{k} j D_j.
double hill(const SortedSample& sample, const TailWindow& window);

/// (1/k) sum_{i=1}^{k} (Y_{n-i+1,n} - Y_{n-k,n})^p / p!; requires l == 0.
double dedh_moment(const SortedSample& sample, const TailWindow& window, int p);

/// Default budget of index chains t_naive will enumerate.
inline constexpr double kNaiveChainBudget = 5e7;

/// Sum-product statistic by explicit enumeration of compositions and strictly
/// decreasing index chains k >= i_1 > ... > i_h >= l+1. Oracle quality, not
/// fast; throws resource_error when the chain count exceeds `budget`.
double t_naive(const SortedSample& sample, const TailWindow& window, int p, double budget = kNaiveChainBudget);

/// Sum-product statistic via the iterated-integral representation, O(p^2 (k-l)).
double t_fast(const SortedSample& sample, const TailWindow& window, int p);

/// [T_n(1), ..., T_n(pmax)] from a single pass.
std::vector<double> t_ladder(const SortedSample& sample, const TailWindow& window, int pmax);

/// T^{-1/p}; throws undefined_estimate when T <= 0.
double gamma_hat_from(double t_value, int p);
double gamma_hat(const SortedSample& sample, const TailWindow& window, int p);

/// True when every spacing in the window is zero, so all T_n(p) vanish.
bool window_degenerate(const SortedSample& sample, const TailWindow& window);

}  // namespace tailsum
