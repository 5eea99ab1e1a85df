#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "coxring/integer.hpp"

namespace coxring {

/// Dense arbitrary-precision integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Builds from nested rows; all rows must have equal length.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols_if_empty = 0) {
    IntMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw ValidationError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows_if_empty = 0) {
    IntMatrix m(cols.empty() ? rows_if_empty : cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows_) throw ValidationError("ragged matrix columns");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  IntVector column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& z) { return z == 0; });
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw ValidationError("matrix shape mismatch in product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntVector operator*(const IntMatrix& a, const IntVector& x) {
    if (a.cols_ != x.size()) throw ValidationError("matrix/vector shape mismatch");
    IntVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// U * M * V = S with U, V unimodular and S in Smith normal form.  The inverses
/// of U and V are tracked alongside so callers never need to invert.
struct SmithForm {
  IntMatrix U, S, V;
  IntMatrix U_inv, V_inv;
  std::size_t rank = 0;

  const Integer& invariant(std::size_t i) const { return S(i, i); }
};

namespace detail {

// Row operations are applied to (S, U) and mirrored as column operations on U_inv.
struct SmithWork {
  SmithForm f;

  void row_swap(std::size_t a, std::size_t b) {
    f.S.swap_rows(a, b);
    f.U.swap_rows(a, b);
    f.U_inv.swap_cols(a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    f.S.swap_cols(a, b);
    f.V.swap_cols(a, b);
    f.V_inv.swap_rows(a, b);
  }
  void row_add(std::size_t dst, std::size_t src, const Integer& k) {
    f.S.add_row(dst, src, k);
    f.U.add_row(dst, src, k);
    f.U_inv.add_col(src, dst, -k);
  }
  void col_add(std::size_t dst, std::size_t src, const Integer& k) {
    f.S.add_col(dst, src, k);
    f.V.add_col(dst, src, k);
    f.V_inv.add_row(src, dst, -k);
  }
  void row_negate(std::size_t r) {
    f.S.negate_row(r);
    f.U.negate_row(r);
    f.U_inv.negate_col(r);
  }
};

}  // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  detail::SmithWork w;
  w.f.S = m;
  w.f.U = IntMatrix::identity(rows);
  w.f.U_inv = IntMatrix::identity(rows);
  w.f.V = IntMatrix::identity(cols);
  w.f.V_inv = IntMatrix::identity(cols);
  IntMatrix& S = w.f.S;

  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero |entry| in the lower-right block becomes the pivot.
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (S(i, j) != 0 && (!best || abs(S(i, j)) < abs(S(best->first, best->second)))) best = {i, j};
      if (!best) break;
      w.row_swap(t, best->first);
      w.col_swap(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (S(i, t) == 0) continue;
        w.row_add(i, t, -floor_div(S(i, t), S(t, t)));
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (S(t, j) == 0) continue;
        w.col_add(j, t, -floor_div(S(t, j), S(t, t)));
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and start over.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < rows && !offender; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(S(t, t), S(i, j))) {
            offender = i;
            break;
          }
      if (!offender) break;
      w.row_add(t, *offender, 1);
    }
    if (S(t, t) == 0) break;
    if (S(t, t) < 0) w.row_negate(t);
  }
  w.f.rank = 0;
  for (std::size_t i = 0; i < std::min(rows, cols); ++i)
    if (S(i, i) != 0) w.f.rank = i + 1;
  return std::move(w.f);
}

/// Row-style Hermite normal form of the lattice spanned by the rows of m.
/// Output rows form a basis: pivots strictly increase, pivots are positive and
/// entries above a pivot lie in [0, pivot).
inline IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < a.rows(); ++i)
        if (a(i, c) != 0 && (!best || abs(a(i, c)) < abs(a(*best, c)))) best = i;
      if (!best) break;
      a.swap_rows(r, *best);
      bool done = true;
      for (std::size_t i = r + 1; i < a.rows(); ++i) {
        if (a(i, c) == 0) continue;
        a.add_row(i, r, -floor_div(a(i, c), a(r, c)));
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) a.add_row(i, r, -floor_div(a(i, c), a(r, c)));
    ++r;
  }
  IntMatrix out(r, a.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

/// Basis of the integer kernel {x : m x = 0}, as columns.
inline IntMatrix integer_kernel(const IntMatrix& m) {
  const SmithForm f = smith_normal_form(m);
  IntMatrix k(m.cols(), m.cols() - f.rank);
  for (std::size_t j = f.rank; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) k(i, j - f.rank) = f.V(i, j);
  return k;
}

/// One integer solution of m x = b, or nullopt when none exists.
inline std::optional<IntVector> integer_solve(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw ValidationError("right-hand side has wrong length");
  const SmithForm f = smith_normal_form(m);
  const IntVector ub = f.U * b;
  IntVector y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i < f.rank) {
      if (!divides(f.invariant(i), ub[i])) return std::nullopt;
      y[i] = ub[i] / f.invariant(i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return f.V * y;
}

/// Reduces x modulo the lattice whose Hermite basis is `hnf`: afterwards every
/// pivot coordinate of x lies in [0, pivot).  The result is the same for any
/// two x in one coset.
inline IntVector reduce_mod_hnf(IntVector x, const IntMatrix& hnf) {
  for (std::size_t r = 0; r < hnf.rows(); ++r) {
    std::size_t p = 0;
    while (hnf(r, p) == 0) ++p;
    const Integer q = floor_div(x[p], hnf(r, p));
    if (q == 0) continue;
    for (std::size_t j = p; j < x.size(); ++j) x[j] -= q * hnf(r, j);
  }
  return x;
}

}  // namespace coxring
