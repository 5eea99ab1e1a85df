#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "coxring/integer.hpp"

namespace coxring {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// A point x >= 0 with A x = b, or nullopt if none exists.  Phase-one simplex in
/// exact arithmetic with Bland's rule, so it always terminates.
inline std::optional<std::vector<Rational>> lp_feasible(const RationalMatrix& a, const std::vector<Rational>& b) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a.front().size() : 0;
  if (b.size() != m) throw ValidationError("lp: right-hand side has wrong length");
  if (m == 0) return std::vector<Rational>(n);

  // Columns: n originals, m artificials, rhs.  Row m is the reduced-cost row.
  const std::size_t width = n + m + 1;
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(width));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw ValidationError("lp: ragged constraint matrix");
    const int sign = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * a[i][j];
    t[i][n + i] = 1;
    t[i][width - 1] = sign * b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) t[m][j] -= t[i][j];
  for (std::size_t i = 0; i < m; ++i) t[m][width - 1] -= t[i][width - 1];

  for (;;) {
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (t[m][j] < 0) {
        enter = j;
        break;
      }
    if (!enter) break;
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][*enter] <= 0) continue;
      Rational ratio = t[i][width - 1] / t[i][*enter];
      if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) break;  // unbounded direction; cannot happen in phase one
    const std::size_t r = *leave;
    const Rational piv = t[r][*enter];
    for (Rational& v : t[r]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == r || t[i][*enter] == 0) continue;
      const Rational f = t[i][*enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = *enter;
  }
  if (t[m][width - 1] != 0) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t[i][width - 1];
  return x;
}

}  // namespace coxring
