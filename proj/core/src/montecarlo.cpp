#include "tailsum/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "tailsum/errors.hpp"
#include "tailsum/limit_process.hpp"
#include "tailsum/quadrature.hpp"
#include "tailsum/rng.hpp"

namespace tailsum {

namespace {

struct Centers {
  std::vector<double> fixed;  // tau_p(x_n)
};

Centers fixed_centers(const ExperimentConfig& config) {
  const TailWindow window = TailWindow::make(config.n, config.k, config.l);
  Centers c;
  for (int p = 1; p <= config.pmax; ++p) c.fixed.push_back(tau_p(config.dist, p, window));
  return c;
}

std::vector<double> replicate_with(const ExperimentConfig& config, const Centers& centers, std::size_t replication) {
  const TailWindow window{config.n, config.k, config.l};
  const SortedSample sample = sample_upper(config.dist, derive_key(config.seed, replication), config.n, config.k + 1);
  const std::vector<double> ladder = t_ladder(sample, window, config.pmax);
  const double observed_threshold = sample.from_top(config.k + 1);
  const double root_k = std::sqrt(static_cast<double>(config.k));

  std::vector<double> out(ladder.size());
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const int p = static_cast<int>(i) + 1;
    const double center = config.centering == Centering::RandomThreshold
                              ? tau_p_at(config.dist, p, window, observed_threshold)
                              : centers.fixed[i];
    out[i] = root_k * (ladder[i] - center) / centers.fixed[i];
  }
  return out;
}

double factorial(int m) {
  double f = 1.0;
  for (int j = 2; j <= m; ++j) f *= j;
  return f;
}

// int_0^S int_0^1 e^{-u} u^{r+rho-1} w^{b-1} dw du by tensor composite Simpson.
double mapped_triangle(int r, int rho, int b, const QuadratureOracleConfig& config) {
  const int g = config.grid;
  const double hu = config.truncation / g;
  const double hw = 1.0 / g;
  const int power = r + rho - 1;
  std::vector<double> inner(static_cast<std::size_t>(g) + 1);
  for (int j = 0; j <= g; ++j) inner[static_cast<std::size_t>(j)] = std::pow(j * hw, b - 1);
  long double total = 0.0L;
  for (int i = 0; i <= g; ++i) {
    const double u = i * hu;
    const double outer = std::exp(-u) * std::pow(u, power);
    const double wu = quadrature::simpson_weight(i, g, hu);
    long double row = 0.0L;
    for (int j = 0; j <= g; ++j) {
      row += static_cast<long double>(quadrature::simpson_weight(j, g, hw)) * outer * inner[static_cast<std::size_t>(j)];
    }
    total += static_cast<long double>(wu) * row;
  }
  return static_cast<double>(total);
}

}  // namespace

std::string centering_name(Centering centering) {
  return centering == Centering::RandomThreshold ? "random" : "fixed";
}

void ExperimentConfig::validate() const {
  TailWindow::make(n, k, l);
  if (pmax < 1) throw domain_error("experiment: pmax must be >= 1");
  if (reps < 2) throw domain_error("experiment: reps must be >= 2");
}

bool ExperimentReport::all_pass() const {
  return std::all_of(comparisons.begin(), comparisons.end(), [](const Comparison& c) { return c.pass; });
}

std::vector<double> replicate(const ExperimentConfig& config, std::size_t replication) {
  config.validate();
  return replicate_with(config, fixed_centers(config), replication);
}

std::vector<std::vector<double>> predicted_covariance(const ExperimentConfig& config) {
  const CovarianceModel model = CovarianceModel::build(config.dist.domain(), config.pmax);
  return config.centering == Centering::RandomThreshold ? model.sigma : model.reduced();
}

ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  const Centers centers = fixed_centers(config);
  const std::size_t reps = config.reps;
  const auto P = static_cast<std::size_t>(config.pmax);

  std::vector<std::vector<double>> results(reps);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) {
      results[r] = replicate_with(config, centers, r);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  ExperimentReport report;
  report.config = config;
  report.predicted = predicted_covariance(config);

  // Aggregation runs in replication order regardless of scheduling.
  const auto count = static_cast<long double>(reps);
  std::vector<long double> mean(P, 0.0L);
  for (const auto& row : results) {
    for (std::size_t i = 0; i < P; ++i) mean[i] += row[i];
  }
  for (auto& m : mean) m /= count;

  std::vector<std::vector<long double>> m2(P, std::vector<long double>(P, 0.0L));
  std::vector<std::vector<long double>> m22(P, std::vector<long double>(P, 0.0L));
  for (const auto& row : results) {
    for (std::size_t i = 0; i < P; ++i) {
      const long double di = row[i] - mean[i];
      for (std::size_t j = i; j < P; ++j) {
        const long double dj = row[j] - mean[j];
        m2[i][j] += di * dj;
        m22[i][j] += di * di * dj * dj;
      }
    }
  }

  report.mean.resize(P);
  report.mean_se.resize(P);
  report.covariance.assign(P, std::vector<double>(P));
  report.covariance_se.assign(P, std::vector<double>(P));
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t j = i; j < P; ++j) {
      const long double cov = m2[i][j] / (count - 1.0L);
      const long double var_i = m2[i][i] / (count - 1.0L);
      const long double var_j = m2[j][j] / (count - 1.0L);
      const long double fourth = m22[i][j] / count;
      // Variance of the sample covariance (unbiased moments, finite count).
      const long double se2 = (fourth - cov * cov) / count + (cov * cov + var_i * var_j) / (count * (count - 1.0L));
      report.covariance[i][j] = report.covariance[j][i] = static_cast<double>(cov);
      report.covariance_se[i][j] = report.covariance_se[j][i] = static_cast<double>(std::sqrt(std::max(se2, 0.0L)));
    }
  }
  for (std::size_t i = 0; i < P; ++i) {
    report.mean[i] = static_cast<double>(mean[i]);
    report.mean_se[i] = std::sqrt(report.covariance[i][i] / static_cast<double>(reps));
  }

  for (std::size_t i = 0; i < P; ++i) {
    const int p = static_cast<int>(i) + 1;
    Comparison mean_check{"mean", p, p, report.mean[i], report.mean_se[i], 0.0, config.mean_abs_tol, false, false};
    mean_check.pass = std::fabs(mean_check.empirical) <= config.mean_abs_tol;
    report.comparisons.push_back(mean_check);

    const double tol = p <= 2 ? config.variance_rel_tol_low : config.variance_rel_tol_high;
    Comparison var_check{"variance", p, p, report.covariance[i][i], report.covariance_se[i][i], report.predicted[i][i],
                         tol, true, false};
    var_check.pass = std::fabs(var_check.empirical - var_check.predicted) <= tol * std::fabs(var_check.predicted);
    report.comparisons.push_back(var_check);
  }
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t j = i + 1; j < P; ++j) {
      Comparison cov_check{"covariance", static_cast<int>(i) + 1, static_cast<int>(j) + 1, report.covariance[i][j],
                           report.covariance_se[i][j], report.predicted[i][j], config.covariance_rel_tol, true, false};
      cov_check.pass =
          std::fabs(cov_check.empirical - cov_check.predicted) <= config.covariance_rel_tol * std::fabs(cov_check.predicted);
      report.comparisons.push_back(cov_check);
    }
  }
  return report;
}

void QuadratureOracleConfig::validate() const {
  if (grid < 64 || grid % 2 != 0) throw domain_error("oracle: grid must be even and >= 64");
  if (!(truncation >= 40.0)) throw domain_error("oracle: truncation S must be >= 40");
}

double quadrature_oracle_a(int r, int rho, const QuadratureOracleConfig& config) {
  config.validate();
  if (r < 1 || rho < 1 || r > 8 || rho > 8) throw domain_error("oracle: need 1 <= r, rho <= 8");
  // t <= s with t = s w, and s <= t with s = t w.
  const double below = mapped_triangle(r, rho, rho, config);
  const double above = mapped_triangle(r, rho, r, config);
  return (below + above) / (factorial(r - 1) * factorial(rho - 1));
}

OracleResult quadrature_oracle_checked(int r, int rho, const QuadratureOracleConfig& config) {
  OracleResult out;
  out.value = quadrature_oracle_a(r, rho, config);
  QuadratureOracleConfig finer = config;
  finer.grid *= 2;
  out.refined = quadrature_oracle_a(r, rho, finer);
  out.convergence = std::fabs(out.refined - out.value);
  return out;
}

std::optional<long long> published_covariance(int r, int rho) {
  if (r > rho) std::swap(r, rho);
  if (r < 1 || rho > 4) return std::nullopt;
  // Upper triangle, row r, column rho.
  static constexpr long long printed[4][4] = {
      {2, 3, 4, 5},
      {0, 6, 9, 11},
      {0, 0, 20, 29},
      {0, 0, 0, 70},
  };
  return printed[r - 1][rho - 1];
}

std::vector<AdjudicationRow> adjudicate_covariance(int pmax, const QuadratureOracleConfig& config, double rel_tol) {
  if (pmax < 1 || pmax > 8) throw domain_error("adjudicate_covariance: need 1 <= pmax <= 8");
  std::vector<AdjudicationRow> rows;
  for (int r = 1; r <= pmax; ++r) {
    for (int rho = r; rho <= pmax; ++rho) {
      AdjudicationRow row;
      row.r = r;
      row.rho = rho;
      row.recursion = a_cov_recursion(r, rho);
      row.closed_form = a_cov_closed(r, rho);
      row.quadrature = quadrature_oracle_a(r, rho, config);
      row.published = published_covariance(r, rho);

      const double closed = to_double(row.closed_form);
      const double recursion = to_double(row.recursion);
      row.consistent = std::fabs(recursion - closed) <= rel_tol * closed &&
                       std::fabs(row.quadrature - closed) <= rel_tol * closed &&
                       std::fabs(row.quadrature - recursion) <= rel_tol * recursion;
      row.published_match = !row.published || static_cast<exact_int>(*row.published) == row.recursion;
      if (!row.consistent) {
        row.verdict = "inconsistent";
      } else if (!row.published_match) {
        row.verdict = "published-table discrepancy";
      } else {
        row.verdict = "consistent";
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace tailsum
