#include "tailsum/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "tailsum/errors.hpp"

namespace tailsum::quadrature {

namespace {

double simpson_step(const Integrand& f, double a, double fa, double b, double fb, double m, double fm, double whole,
                    double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const Integrand& f, double a, double b, double rel_tol, double abs_tol) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);

  // Coarse pre-pass on 64 panels gives the scale for the relative target.
  double scale = 0.0;
  const int coarse = 64;
  const double h = (b - a) / coarse;
  for (int i = 0; i <= coarse; ++i) scale += simpson_weight(i, coarse, h) * std::fabs(f(a + i * h));
  const double tol = std::max(rel_tol * scale, abs_tol);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, 50);
}

double integrate_to_infinity(const Integrand& f, double a, double initial_width, double rel_tol, double tail_cutoff) {
  if (!(initial_width > 0.0)) throw domain_error("integrate_to_infinity: initial width must be > 0");
  double total = 0.0;
  double lo = a;
  double width = initial_width;
  for (int panel = 0; panel < 200; ++panel) {
    const double part = adaptive_simpson(f, lo, lo + width, rel_tol);
    total += part;
    if (panel > 0 && std::fabs(part) <= tail_cutoff * std::fabs(total)) return total;
    if (panel > 0 && total == 0.0 && part == 0.0) return total;
    lo += width;
    width *= 2.0;
  }
  return total;
}

double simpson_weight(int i, int panels, double h) {
  if (i == 0 || i == panels) return h / 3.0;
  return (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
}

}  // namespace tailsum::quadrature
