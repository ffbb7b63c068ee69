#pragma once

// Independent reference for the parasitic crossbar network: assembles the
// full node-voltage system densely from the topology description (cell
// conductance bridging row and column lines, r_wire between neighbours and at
// the drive/sense boundaries) and solves it by Gaussian elimination with
// partial pivoting. Shares no code with the sparse production path.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "hopcut/crossbar.hpp"

namespace hopcut::testing {

inline std::vector<double> solve_dense(std::vector<double> a,
                                       std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (a[pivot * n + col] == 0.0)
      throw std::runtime_error("dense mesh oracle: singular system");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c)
        std::swap(a[pivot * n + c], a[col * n + c]);
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t ri = n; ri-- > 0;) {
    double acc = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) acc -= a[ri * n + c] * x[c];
    x[ri] = acc / a[ri * n + ri];
  }
  return x;
}

inline std::vector<double> mesh_column_currents(const ConductanceMatrix& g,
                                                std::span<const double> v_in,
                                                double r_wire) {
  const int rows = g.rows, cols = g.cols;
  const double gw = 1.0 / r_wire;
  const std::size_t unknowns = 2 * std::size_t(rows) * cols;
  std::vector<double> a(unknowns * unknowns, 0.0);
  std::vector<double> b(unknowns, 0.0);
  auto row_node = [cols](int r, int c) { return std::size_t(r) * cols + c; };
  auto col_node = [rows, cols](int r, int c) {
    return std::size_t(rows) * cols + std::size_t(r) * cols + c;
  };
  auto stamp = [&](std::size_t p, std::size_t q, double cond) {
    a[p * unknowns + p] += cond;
    a[q * unknowns + q] += cond;
    a[p * unknowns + q] -= cond;
    a[q * unknowns + p] -= cond;
  };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      stamp(row_node(r, c), col_node(r, c), g.at(r, c));
      if (c + 1 < cols) stamp(row_node(r, c), row_node(r, c + 1), gw);
      if (r + 1 < rows) stamp(col_node(r, c), col_node(r + 1, c), gw);
    }
    a[row_node(r, 0) * unknowns + row_node(r, 0)] += gw;
    b[row_node(r, 0)] += gw * v_in[r];
  }
  for (int c = 0; c < cols; ++c) {
    a[col_node(rows - 1, c) * unknowns + col_node(rows - 1, c)] += gw;
  }
  const auto x = solve_dense(std::move(a), std::move(b));
  std::vector<double> currents(cols);
  for (int c = 0; c < cols; ++c) currents[c] = gw * x[col_node(rows - 1, c)];
  return currents;
}

}  // namespace hopcut::testing
