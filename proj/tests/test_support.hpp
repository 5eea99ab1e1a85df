#pragma once

#include <random>
#include <vector>

#include "coxring/abgroup.hpp"
#include "coxring/matrix.hpp"

namespace coxring::testing {

// Degree columns of the nine dP4 generators in the basis l0..l5.
inline std::vector<IntVector> dp4_degree_columns() {
  return {int_vector({0, 0, 1, -1, 0, 0}),  int_vector({0, 1, -1, 0, 0, 0}), int_vector({1, -1, -1, 0, 0, -1}),
          int_vector({0, 0, 0, 1, -1, 0}),  int_vector({0, 0, 0, 0, 0, 1}),  int_vector({0, 0, 0, 0, 1, 0}),
          int_vector({1, -1, 0, 0, 0, 0}),  int_vector({1, 0, 0, 0, 0, -1}), int_vector({2, -1, -1, -1, -1, 0})};
}

// D1, D2, D3 + D4, D5 + D6.
inline std::vector<IntVector> dp4_h_columns() {
  return {int_vector({0, 0, 1, -1, 0, 0}), int_vector({0, 1, -1, 0, 0, 0}), int_vector({1, -1, -1, 1, -1, -1}),
          int_vector({0, 0, 0, 0, 1, 1})};
}

inline GroupHom dp4_grading() {
  return GroupHom(AbelianGroup::free(9), AbelianGroup::free(6), IntMatrix::from_columns(dp4_degree_columns()));
}

// Cofactor expansion; only for the small matrices used as oracles.
inline Integer det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = m(i, k);
    const Integer term = m(0, j) * det(minor);
    d += (j % 2 == 0) ? term : Integer(-term);
  }
  return d;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

// Calls f on every integer vector in [-b, b]^n.
template <class F>
void for_each_in_box(std::size_t n, int b, F&& f) {
  IntVector x(n, Integer(-b));
  for (;;) {
    f(x);
    std::size_t i = 0;
    while (i < n && x[i] == b) x[i++] = -b;
    if (i == n) return;
    ++x[i];
  }
}

}  // namespace coxring::testing
