#include "tailsum/limit_process.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tailsum/combinatorics.hpp"
#include "tailsum/errors.hpp"

namespace tailsum {

namespace {

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw domain_error("gamma must be finite and > 0");
}

void check_order(int r, const char* what) {
  if (r < 1) throw domain_error(std::string(what) + ": order must be >= 1");
}

}  // namespace

Domain Domain::frechet(double gamma) {
  check_gamma(gamma);
  return Domain{Kind::Frechet, gamma};
}

Domain Domain::weibull(double gamma) {
  check_gamma(gamma);
  return Domain{Kind::Weibull, gamma};
}

Domain Domain::gumbel() { return Domain{Kind::Gumbel, 1.0}; }

std::string Domain::name() const {
  switch (kind) {
    case Kind::Frechet: return "frechet";
    case Kind::Weibull: return "weibull";
    case Kind::Gumbel: return "gumbel";
  }
  return "unknown";
}

double c1(int r, const Domain& domain) {
  check_order(r, "c1");
  if (domain.kind != Domain::Kind::Weibull) return 1.0;
  const double g = domain.gamma;
  double product = 1.0;
  for (int j = 1; j <= r; ++j) product *= (g + j) / (g + r + j);
  return product;
}

double c2(int r, int rho, const Domain& domain) {
  check_order(r, "c2");
  if (r >= rho) throw domain_error("c2: need r < rho (use c1 on the diagonal)");
  if (domain.kind != Domain::Kind::Weibull) return 1.0;
  const double g = domain.gamma;
  double product = 1.0;
  for (int j = 1; j <= r; ++j) product *= (g + j) / (g + rho + j);
  return product;
}

double e_fn(int p, const Domain& domain) {
  check_order(p, "e_fn");
  if (domain.kind != Domain::Kind::Weibull) return 1.0;
  return (domain.gamma + p) / domain.gamma;
}

exact_int a_cov_recursion(int r, int rho) {
  check_order(r, "a_cov_recursion");
  check_order(rho, "a_cov_recursion");
  if (r == rho) return a_seq(r);
  if (r > rho) std::swap(r, rho);
  const int tau = rho - r;
  exact_int sum = 0;
  for (int j = 0; j <= r; ++j) sum = checked_add(sum, checked_mul(mu1(tau, 1, j), a_seq(r - j)));
  return sum;
}

exact_int a_cov_closed(int r, int rho) {
  check_order(r, "a_cov_closed");
  check_order(rho, "a_cov_closed");
  return binomial(r + rho, r);
}

double sigma2(int r, const Domain& domain) { return c1(r, domain) * to_double(a_seq(r)); }

double sigma_cov(int r, int rho, const Domain& domain) {
  if (r == rho) return sigma2(r, domain);
  if (r > rho) std::swap(r, rho);
  return c2(r, rho, domain) * to_double(a_cov_recursion(r, rho));
}

double reduced_var(int r, const Domain& domain) {
  const double e = e_fn(r, domain);
  return sigma2(r, domain) - 2.0 * e + e * e;
}

double reduced_cov(int r, int rho, const Domain& domain) {
  if (r == rho) return reduced_var(r, domain);
  const double er = e_fn(r, domain);
  const double erho = e_fn(rho, domain);
  return sigma_cov(r, rho, domain) - er - erho + er * erho;
}

double lil_envelope(int p, const Domain& domain, double k, double n) {
  if (!(k >= 3.0 && k < n)) throw domain_error("lil_envelope: need 3 <= k < n");
  const double loglog = std::log(std::log(n));
  if (!(loglog > 0.0)) throw domain_error("lil_envelope: log log n must be > 0");
  const double variance = reduced_var(p, domain);
  return std::sqrt(std::max(variance, 0.0)) * std::sqrt(2.0 * loglog / k);
}

CovarianceModel CovarianceModel::build(const Domain& domain, int pmax) {
  if (pmax < 1) throw domain_error("covariance model: pmax must be >= 1");
  CovarianceModel model;
  model.domain = domain;
  model.pmax = pmax;
  const auto P = static_cast<std::size_t>(pmax);
  model.sigma2.resize(P);
  model.e.resize(P);
  model.sigma.assign(P, std::vector<double>(P));
  for (int r = 1; r <= pmax; ++r) {
    model.sigma2[static_cast<std::size_t>(r - 1)] = tailsum::sigma2(r, domain);
    model.e[static_cast<std::size_t>(r - 1)] = e_fn(r, domain);
    for (int rho = r; rho <= pmax; ++rho) {
      const double value = sigma_cov(r, rho, domain);
      model.sigma[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(rho - 1)] = value;
      model.sigma[static_cast<std::size_t>(rho - 1)][static_cast<std::size_t>(r - 1)] = value;
    }
  }
  return model;
}

std::vector<std::vector<double>> CovarianceModel::reduced() const {
  const auto P = static_cast<std::size_t>(pmax);
  std::vector<std::vector<double>> out(P, std::vector<double>(P));
  for (std::size_t r = 0; r < P; ++r) {
    for (std::size_t rho = 0; rho < P; ++rho) out[r][rho] = sigma[r][rho] - e[r] - e[rho] + e[r] * e[rho];
  }
  return out;
}

}  // namespace tailsum
