#include "tailsum/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace tailsum {

std::string to_string(exact_int value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  std::string digits;
  while (value != 0) {
    const int digit = static_cast<int>(value % 10);
    digits.push_back(static_cast<char>('0' + (negative ? -digit : digit)));
    value /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::int64_t to_int64(exact_int value) {
  if (value > static_cast<exact_int>(INT64_MAX) || value < static_cast<exact_int>(INT64_MIN)) {
    throw overflow_error("value " + to_string(value) + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(value);
}

int Composition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

namespace {

void compositions_into(int remaining, int slots, std::vector<int>& prefix, std::vector<Composition>& out) {
  if (slots == 1) {
    prefix.push_back(remaining);
    out.push_back(Composition{prefix});
    prefix.pop_back();
    return;
  }
  // Leave at least one unit for each later slot.
  for (int first = 1; first <= remaining - (slots - 1); ++first) {
    prefix.push_back(first);
    compositions_into(remaining - first, slots - 1, prefix, out);
    prefix.pop_back();
  }
}

std::string cell_name(const char* column_label, int v, int column) {
  return "(v=" + std::to_string(v) + ", " + column_label + "=" + std::to_string(column) + ")";
}

exact_int add_at(exact_int a, exact_int b, const char* column_label, int v, int column) {
  try {
    return checked_add(a, b);
  } catch (const overflow_error&) {
    throw overflow_error("integer overflow in table cell " + cell_name(column_label, v, column));
  }
}

// Columns indexed 1..rmax; column c holds rows 0..vmax + (rmax - c), which is
// exactly what the recursion of the next column reads.
using Columns = std::vector<std::vector<exact_int>>;

template <class Column1, class Column2>
Columns fill_type_one_shape(int vmax, int rmax, Column1 column1, Column2 column2, const char* label) {
  Columns grid(static_cast<std::size_t>(rmax) + 1);
  auto rows_in = [&](int c) { return static_cast<std::size_t>(vmax + (rmax - c)) + 1; };
  for (int c = 1; c <= rmax; ++c) {
    auto& col = grid[static_cast<std::size_t>(c)];
    col.resize(rows_in(c));
    for (std::size_t v = 0; v < col.size(); ++v) {
      const int vi = static_cast<int>(v);
      if (c == 1) {
        col[v] = column1(vi);
      } else if (c == 2) {
        col[v] = column2(vi);
      } else {
        const auto& prev = grid[static_cast<std::size_t>(c) - 1];
        if (v == 0) {
          col[v] = prev[1];
        } else if (v == 1) {
          col[v] = add_at(prev[2], prev[1], label, vi, c);
        } else {
          col[v] = add_at(prev[v + 1], col[v - 1], label, vi, c);
        }
      }
    }
  }
  return grid;
}

Columns beta_columns(int vmax, int rmax) {
  return fill_type_one_shape(
      vmax, rmax, [](int) -> exact_int { return 1; }, [](int) -> exact_int { return 1; }, "r");
}

// Type II columns for delta = tau down to 1, each with rows 0..vmax.
Columns mu0_columns(int tau, int vmax) {
  Columns grid(static_cast<std::size_t>(tau) + 1);
  for (int d = tau; d >= 1; --d) {
    auto& col = grid[static_cast<std::size_t>(d)];
    col.assign(static_cast<std::size_t>(vmax) + 1, 1);
    if (d == tau) continue;
    const auto& right = grid[static_cast<std::size_t>(d) + 1];
    for (std::size_t v = 1; v < col.size(); ++v) {
      col[v] = add_at(col[v - 1], right[v], "delta", static_cast<int>(v), d);
    }
  }
  return grid;
}

Columns mu1_columns(int tau, int vmax, int dmax) {
  const int rmax = std::max(dmax, 2);
  const int rows = vmax + rmax;
  const Columns type2 = mu0_columns(tau, rows + 1);
  const auto& first = type2[1];
  std::vector<exact_int> partial(static_cast<std::size_t>(rows) + 1);
  exact_int running = 0;
  for (int v = 0; v <= rows; ++v) {
    running = add_at(running, first[static_cast<std::size_t>(v) + 1], "delta", v, 2);
    partial[static_cast<std::size_t>(v)] = running;
  }
  return fill_type_one_shape(
      vmax, rmax, [&](int v) { return first[static_cast<std::size_t>(v)]; },
      [&](int v) { return partial[static_cast<std::size_t>(v)]; }, "delta");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw domain_error(message);
}

}  // namespace

std::vector<Composition> compositions(int p, int h) {
  require(h >= 1 && h <= p, "compositions: need 1 <= h <= p, got p=" + std::to_string(p) + ", h=" + std::to_string(h));
  std::vector<Composition> out;
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(h));
  compositions_into(p, h, prefix, out);
  return out;
}

exact_int binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  exact_int result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) is divisible by i at every step.
    result = checked_mul(result, n - k + i) / i;
  }
  return result;
}

exact_int beta(int v, int r) {
  require(v >= 0 && r >= 1, "beta: need v >= 0 and r >= 1");
  const auto grid = beta_columns(v, r);
  return grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(v)];
}

exact_int mu0(int tau, int v, int delta) {
  require(tau >= 1, "mu0: tau must be >= 1");
  require(v >= 0, "mu0: v must be >= 0");
  require(delta >= 1 && delta <= tau,
          "mu0: delta=" + std::to_string(delta) + " outside [1, " + std::to_string(tau) + "]");
  const auto grid = mu0_columns(tau, v);
  return grid[static_cast<std::size_t>(delta)][static_cast<std::size_t>(v)];
}

exact_int mu1(int tau, int v, int delta) {
  require(tau >= 1, "mu1: tau must be >= 1");
  require(v >= 0, "mu1: v must be >= 0");
  require(delta >= 0, "mu1: delta must be >= 0");
  if (delta == 0) return 1;
  const auto grid = mu1_columns(tau, v, delta);
  return grid[static_cast<std::size_t>(delta)][static_cast<std::size_t>(v)];
}

exact_int a_seq(int r) {
  require(r >= 0, "a_seq: r must be >= 0");
  if (r == 0) return 1;
  const auto grid = beta_columns(1, r);
  std::vector<exact_int> a(static_cast<std::size_t>(r) + 1);
  a[0] = 1;
  for (int m = 1; m <= r; ++m) {
    exact_int sum = 0;
    for (int j = 1; j <= m; ++j) {
      sum = checked_add(sum, checked_mul(grid[static_cast<std::size_t>(j)][1], a[static_cast<std::size_t>(m - j)]));
    }
    a[static_cast<std::size_t>(m)] = checked_mul(2, sum);
  }
  return a[static_cast<std::size_t>(r)];
}

NumberTable::NumberTable(Family family, int tau, int vmax, int dmax)
    : family_(family), tau_(tau), vmax_(vmax), dmax_(dmax),
      entries_(static_cast<std::size_t>(vmax + 1) * static_cast<std::size_t>(dmax)) {}

NumberTable NumberTable::generate(Family family, int vmax, int dmax, int tau) {
  require(vmax >= 0, "table: vmax must be >= 0");
  require(dmax >= 1, "table: dmax must be >= 1");
  if (family != Family::TypeI) require(tau >= 1, "table: tau must be >= 1 for type II/III numbers");
  if (family == Family::TypeII) require(dmax <= tau, "table: type II numbers need dmax <= tau");

  NumberTable table(family, family == Family::TypeI ? 0 : tau, vmax, dmax);
  Columns grid;
  switch (family) {
    case Family::TypeI: grid = beta_columns(vmax, dmax); break;
    case Family::TypeII: grid = mu0_columns(tau, vmax); break;
    case Family::TypeIII: grid = mu1_columns(tau, vmax, dmax); break;
  }
  for (int v = 0; v <= vmax; ++v) {
    for (int c = 1; c <= dmax; ++c) {
      table.entries_[static_cast<std::size_t>(v) * static_cast<std::size_t>(dmax) + static_cast<std::size_t>(c - 1)] =
          grid[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)];
    }
  }
  return table;
}

exact_int NumberTable::at(int v, int column) const {
  require(v >= 0 && v <= vmax_ && column >= 1 && column <= dmax_, "table: cell outside generated range");
  return entries_[static_cast<std::size_t>(v) * static_cast<std::size_t>(dmax_) + static_cast<std::size_t>(column - 1)];
}

exact_int lattice_path_count(int width, int height, const Staircase& lower, const Staircase& upper) {
  require(width >= 0 && height >= 0, "lattice_path_count: negative dimensions");
  const auto columns = static_cast<std::size_t>(width) + 1;
  require(lower.heights.size() == columns && upper.heights.size() == columns,
          "lattice_path_count: staircases need width+1 entries");
  require(lower.heights.front() == 0, "lattice_path_count: lower boundary must contain (0,0)");
  require(upper.heights.back() == height, "lattice_path_count: upper boundary must reach (width,height)");
  for (std::size_t x = 0; x < columns; ++x) {
    require(lower.heights[x] <= upper.heights[x], "lattice_path_count: lower boundary above upper");
    require(lower.heights[x] >= 0 && upper.heights[x] <= height, "lattice_path_count: boundary outside the grid");
    if (x > 0) {
      require(lower.heights[x] >= lower.heights[x - 1] && upper.heights[x] >= upper.heights[x - 1],
              "lattice_path_count: staircases must be non-decreasing");
    }
  }

  // ways[y] holds the count for the current column; an east step keeps y,
  // north steps stay within the column.
  std::vector<exact_int> ways(static_cast<std::size_t>(height) + 1, 0);
  for (std::size_t x = 0; x < columns; ++x) {
    const int lo = lower.heights[x];
    const int hi = upper.heights[x];
    std::vector<exact_int> next(ways.size(), 0);
    for (int y = lo; y <= hi; ++y) {
      exact_int from_west = x == 0 ? exact_int{y == 0 ? 1 : 0} : ways[static_cast<std::size_t>(y)];
      exact_int from_south = y > lo ? next[static_cast<std::size_t>(y) - 1] : 0;
      next[static_cast<std::size_t>(y)] = checked_add(from_west, from_south);
    }
    ways = std::move(next);
  }
  return ways[static_cast<std::size_t>(height)];
}

Staircase flat_staircase(int width, int height_value) {
  return Staircase{std::vector<int>(static_cast<std::size_t>(width) + 1, height_value)};
}

Staircase diagonal_staircase(int width) {
  Staircase s;
  s.heights.resize(static_cast<std::size_t>(width) + 1);
  std::iota(s.heights.begin(), s.heights.end(), 0);
  return s;
}

}  // namespace tailsum
