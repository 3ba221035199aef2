#pragma once

#include <functional>

namespace tailsum::quadrature {

using Integrand = std::function<double(double)>;

/// Adaptive Simpson on [a, b] to relative tolerance `rel_tol` (absolute floor
/// `abs_tol`). Recursion depth is capped at 50.
double adaptive_simpson(const Integrand& f, double a, double b, double rel_tol, double abs_tol = 1e-300);

/// Integral over [a, +inf): adaptive Simpson on [a, a+w], [a+w, a+3w], ...
/// with doubling widths, stopping once a panel contributes less than
/// `tail_cutoff` of the running total.
double integrate_to_infinity(const Integrand& f, double a, double initial_width, double rel_tol,
                             double tail_cutoff = 1e-16);

/// Composite Simpson weights for `panels` (even) equal panels: 1,4,2,...,4,1
/// times h/3. Returned weight i multiplies f(a + i h).
double simpson_weight(int i, int panels, double h);

}  // namespace tailsum::quadrature
