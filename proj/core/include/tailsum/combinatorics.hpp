#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tailsum/exact_int.hpp"

namespace tailsum {

/// Ordered composition of `total` into positive parts; order is significant.
struct Composition {
  std::vector<int> parts;

  int total() const;
  std::size_t size() const { return parts.size(); }
  friend bool operator==(const Composition&, const Composition&) = default;
};

/// All ordered h-part compositions of p, lexicographic. Throws domain_error
/// unless 1 <= h <= p.
std::vector<Composition> compositions(int p, int h);

/// Checked binomial coefficient; 0 when k < 0 or k > n.
exact_int binomial(int n, int k);

/// Type I numbers.
///   beta(v,1) = 1;  beta(v,2) = 1 for v >= 1;  beta(0,r) = beta(1,r-1);
///   beta(1,r) = beta(2,r-1) + beta(1,r-1)          for r >= 3;
///   beta(v,r) = beta(v+1,r-1) + beta(v-1,r)        for v >= 2, r >= 3.
exact_int beta(int v, int r);

/// Type II numbers mu_tau(0, v, delta), 1 <= delta <= tau.
exact_int mu0(int tau, int v, int delta);

/// Type III numbers mu_tau(1, v, delta). delta = 0 gives 1 and delta = 1 gives
/// mu0(tau, v, 1); delta = 2 is seeded by sum_{k=1}^{v+1} mu0(tau, k, 1) and
/// delta >= 3 follows the type I recursion with delta in the role of r.
exact_int mu1(int tau, int v, int delta);

/// a(0) = 1, a(r) = 2 sum_{j=1}^{r} beta(1,j) a(r-j).
exact_int a_seq(int r);

enum class Family { TypeI, TypeII, TypeIII };

/// Rectangular block of one number family. Rows are v = 0..vmax; columns are
/// r = 1..dmax (type I) or delta = 1..dmax (types II/III).
class NumberTable {
 public:
  static NumberTable generate(Family family, int vmax, int dmax, int tau = 0);

  Family family() const { return family_; }
  int tau() const { return tau_; }
  int vmax() const { return vmax_; }
  int dmax() const { return dmax_; }

  /// Column index is the 1-based r (or delta).
  exact_int at(int v, int column) const;

 private:
  NumberTable(Family family, int tau, int vmax, int dmax);

  Family family_;
  int tau_;
  int vmax_;
  int dmax_;
  std::vector<exact_int> entries_;
};

/// Monotone grid boundary for lattice_path_count: for every column
/// x = 0..width, the admissible heights are [lower[x], upper[x]].
struct Staircase {
  std::vector<int> heights;
};

/// Number of unit east/north paths from (0,0) to (width,height) that stay
/// between the two staircases. Both staircases must have width+1 entries and
/// be non-decreasing, with lower <= upper, lower[0] == 0 and
/// upper[width] == height.
exact_int lattice_path_count(int width, int height, const Staircase& lower, const Staircase& upper);

Staircase flat_staircase(int width, int height_value);
/// upper[x] = x, the at-or-below-diagonal boundary of a square.
Staircase diagonal_staircase(int width);

}  // namespace tailsum
