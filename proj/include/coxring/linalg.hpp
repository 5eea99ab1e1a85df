#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "coxring/integer.hpp"

namespace coxring {

/// Sparse row over a field S: column index -> nonzero entry.
template <class S>
using SparseRow = std::map<std::size_t, S>;

template <class S>
bool scalar_is_zero(const S& s) {
  return s == S(0);
}

template <class S>
void axpy(SparseRow<S>& y, const S& a, const SparseRow<S>& x) {
  for (const auto& [c, v] : x) {
    auto it = y.find(c);
    if (it == y.end()) {
      y.emplace(c, a * v);
    } else {
      it->second += a * v;
      if (scalar_is_zero(it->second)) y.erase(it);
    }
  }
}

template <class S>
void scale(SparseRow<S>& y, const S& a) {
  for (auto& [c, v] : y) v *= a;
}

/// Incrementally built echelon basis of a row space.  Each stored row has leading
/// column equal to its pivot with entry 1, and no other stored row has a nonzero
/// entry in that column (reduced form is maintained on insert).
template <class S>
class EchelonBasis {
 public:
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::map<std::size_t, SparseRow<S>>& rows() const noexcept { return rows_; }

  /// Reduces v against the basis; the result has no entries in pivot columns.
  SparseRow<S> reduce(SparseRow<S> v) const {
    // Pivot rows only touch their pivot among pivot columns, so one pass suffices.
    for (const auto& [p, row] : rows_) {
      auto it = v.find(p);
      if (it == v.end()) continue;
      const S f = it->second;
      axpy(v, S(0) - f, row);
    }
    return v;
  }

  /// Same as reduce, also returning the coefficients used: v = reduced + sum c_p row_p.
  SparseRow<S> reduce(SparseRow<S> v, std::map<std::size_t, S>& coeffs) const {
    for (const auto& [p, row] : rows_) {
      auto it = v.find(p);
      if (it == v.end()) continue;
      const S f = it->second;
      coeffs[p] = f;
      axpy(v, S(0) - f, row);
    }
    return v;
  }

  bool contains(const SparseRow<S>& v) const { return reduce(v).empty(); }

  /// Inserts v; returns the new pivot column, or nullopt if v was dependent.
  std::optional<std::size_t> insert(const SparseRow<S>& v) {
    SparseRow<S> r = reduce(v);
    if (r.empty()) return std::nullopt;
    const std::size_t p = r.begin()->first;
    const S lead = r.begin()->second;
    scale(r, S(1) / lead);
    for (auto& [q, row] : rows_) {
      auto it = row.find(p);
      if (it == row.end()) continue;
      const S f = it->second;
      axpy(row, S(0) - f, r);
    }
    rows_.emplace(p, std::move(r));
    return p;
  }

 private:
  std::map<std::size_t, SparseRow<S>> rows_;
};

/// Reduced row echelon form of the span of `vectors`, rows sorted by pivot.
template <class S>
std::vector<SparseRow<S>> row_reduce(const std::vector<SparseRow<S>>& vectors) {
  EchelonBasis<S> e;
  for (const auto& v : vectors) e.insert(v);
  std::vector<SparseRow<S>> out;
  for (const auto& [p, row] : e.rows()) out.push_back(row);
  return out;
}

}  // namespace coxring
