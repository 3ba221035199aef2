#pragma once

#include <string>
#include <vector>

#include "tailsum/exact_int.hpp"

namespace tailsum {

/// Domain of attraction of the underlying distribution. Frechet and Gumbel
/// carry the gamma = +inf convention of the limit theory: C1 = C2 = e = 1.
struct Domain {
  enum class Kind { Frechet, Weibull, Gumbel };

  Kind kind = Kind::Frechet;
  double gamma = 1.0;

  static Domain frechet(double gamma);
  static Domain weibull(double gamma);
  static Domain gumbel();

  std::string name() const;
};

double c1(int r, const Domain& domain);
/// Requires 1 <= r < rho.
double c2(int r, int rho, const Domain& domain);
double e_fn(int p, const Domain& domain);

/// sum_{j=0}^{r} mu_{rho-r}(1,1,j) a(r-j) for 1 <= r < rho: the combinatorial
/// factor of the covariance, before C2.
exact_int a_cov_recursion(int r, int rho);

/// binomial(r+rho, r), the same factor from exponential moments.
exact_int a_cov_closed(int r, int rho);

double sigma2(int r, const Domain& domain);
/// Symmetric in (r, rho); r == rho delegates to sigma2.
double sigma_cov(int r, int rho, const Domain& domain);

double reduced_var(int r, const Domain& domain);
/// Symmetric; r == rho delegates to reduced_var.
double reduced_cov(int r, int rho, const Domain& domain);

/// sqrt(reduced_var(p)) * sqrt(2 log log n / k).
double lil_envelope(int p, const Domain& domain, double k, double n);

/// Finite-dimensional parameters of the limiting process for orders 1..pmax.
struct CovarianceModel {
  Domain domain;
  int pmax = 0;
  std::vector<double> sigma2;               // index p-1
  std::vector<double> e;                    // index p-1
  std::vector<std::vector<double>> sigma;   // [r-1][rho-1], symmetric

  static CovarianceModel build(const Domain& domain, int pmax);

  /// Covariance matrix of the reduced process.
  std::vector<std::vector<double>> reduced() const;
};

}  // namespace tailsum
