#pragma once

// Dense tableau simplex for tiny LPs:  max c.x  s.t.  A x <= b, x >= 0,
// with b >= 0 so the origin is a feasible starting basis. Bland's rule
// guarantees termination.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fidbandit::detail {

inline double lp_maximize(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                          const std::vector<double>& c) {
  constexpr double eps = 1e-12;
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  const std::size_t width = n + m + 1;
  std::vector<double> tab((m + 1) * width, 0.0);
  auto at = [&](std::size_t r, std::size_t col) -> double& { return tab[r * width + col]; };
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("lp_maximize: ragged constraint matrix");
    if (b[i] < 0) throw std::invalid_argument("lp_maximize: right-hand side must be nonnegative");
    for (std::size_t j = 0; j < n; ++j) at(i, j) = a[i][j];
    at(i, n + i) = 1.0;
    at(i, width - 1) = b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) at(m, j) = -c[j];

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (at(m, j) < -eps) {
        enter = j;
        break;
      }
    if (enter == width) return at(m, width - 1);

    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double coef = at(i, enter);
      if (coef <= eps) continue;
      const double ratio = at(i, width - 1) / coef;
      if (ratio < best - eps || (std::abs(ratio - best) <= eps && leave < m && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) throw std::runtime_error("lp_maximize: unbounded objective");

    const double pivot = at(leave, enter);
    for (std::size_t j = 0; j < width; ++j) at(leave, j) /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = at(i, enter);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) at(i, j) -= factor * at(leave, j);
    }
    basis[leave] = enter;
  }
}

}  // namespace fidbandit::detail
