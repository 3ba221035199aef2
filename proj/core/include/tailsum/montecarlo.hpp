#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tailsum/domains.hpp"
#include "tailsum/exact_int.hpp"

namespace tailsum {

enum class Centering {
  RandomThreshold,  // tau_p at the observed Y_{n-k,n}; limit is the extremal process
  FixedThreshold,   // tau_p at x_n = G^{-1}(1 - k/n); limit is the reduced process
};

std::string centering_name(Centering centering);

struct ExperimentConfig {
  TestDistribution dist = TestDistribution::pareto(1.0);
  std::size_t n = 100000;
  std::size_t k = 1000;
  std::size_t l = 0;
  int pmax = 2;
  std::size_t reps = 2000;
  std::uint64_t seed = 0;
  Centering centering = Centering::RandomThreshold;

  // Acceptance tolerances: relative for variances and covariances, absolute
  // for means.
  double variance_rel_tol_low = 0.10;   // p <= 2
  double variance_rel_tol_high = 0.15;  // p >= 3
  double covariance_rel_tol = 0.15;
  double mean_abs_tol = 0.10;

  /// Throws domain_error on an invalid window, pmax < 1 or reps < 2.
  void validate() const;
};

/// One comparison between an empirical moment and the limit model.
struct Comparison {
  std::string quantity;  // "mean", "variance" or "covariance"
  int r = 0;
  int rho = 0;
  double empirical = 0.0;
  double standard_error = 0.0;
  double predicted = 0.0;
  double tolerance = 0.0;
  bool relative = true;
  bool pass = false;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<double> mean;                     // index p-1
  std::vector<double> mean_se;
  std::vector<std::vector<double>> covariance;  // unbiased, symmetric
  std::vector<std::vector<double>> covariance_se;
  std::vector<std::vector<double>> predicted;   // limit covariance
  std::vector<Comparison> comparisons;

  double variance(int p) const { return covariance[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(p - 1)]; }
  bool all_pass() const;
};

/// Normalised, centred T_n(p) ladder for one replication:
/// sqrt(k) (T_n(p) - center_p) / tau_p(x_n), p = 1..pmax.
std::vector<double> replicate(const ExperimentConfig& config, std::size_t replication);

/// Runs `config.reps` replications on `threads` workers (0 = hardware
/// concurrency). Replication r draws from sub-seed derive_key(seed, r) and
/// moments are aggregated in replication order, so the report is identical
/// for every thread count.
ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads = 1);

/// Limiting covariance the experiment is compared against.
std::vector<std::vector<double>> predicted_covariance(const ExperimentConfig& config);

struct QuadratureOracleConfig {
  int grid = 1024;          // Simpson panels per axis; even, >= 64
  double truncation = 60.0; // S; >= 40

  void validate() const;
};

/// a(r, rho) = int_0^inf int_0^inf e^{-max(s,t)} s^{r-1} t^{rho-1} / ((r-1)! (rho-1)!) ds dt,
/// the Brownian-bridge covariance integral of the p = r and p = rho
/// statistics for an exponential log-tail. The square is split along the
/// diagonal and each triangle mapped to a rectangle before composite Simpson,
/// so the kink of max(s,t) never sits inside a panel.
double quadrature_oracle_a(int r, int rho, const QuadratureOracleConfig& config);

struct OracleResult {
  double value = 0.0;          // at config.grid
  double refined = 0.0;        // at 2 * config.grid
  double convergence = 0.0;    // |refined - value|
};

OracleResult quadrature_oracle_checked(int r, int rho, const QuadratureOracleConfig& config);

/// Printed value of the published covariance table for (r, rho), r, rho <= 4.
std::optional<long long> published_covariance(int r, int rho);

struct AdjudicationRow {
  int r = 0;
  int rho = 0;
  exact_int recursion = 0;
  exact_int closed_form = 0;
  double quadrature = 0.0;
  std::optional<long long> published;
  bool consistent = false;      // recursion, closed form and quadrature agree
  bool published_match = true;  // vacuous when nothing was printed
  std::string verdict;
};

/// Every pair 1 <= r <= rho <= pmax (pmax <= 8), with
/// verdict "consistent", "published-table discrepancy" or "inconsistent".
std::vector<AdjudicationRow> adjudicate_covariance(int pmax, const QuadratureOracleConfig& config = {},
                                                   double rel_tol = 1e-3);

}  // namespace tailsum
