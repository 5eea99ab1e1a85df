#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "coxring/abgroup.hpp"
#include "coxring/lp.hpp"

namespace coxring {

using Exponent = std::vector<int>;

/// Graded-lex comparison: total degree first, then lexicographic.
inline bool grlex_less(const Exponent& a, const Exponent& b) {
  long da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da < db;
  return a < b;
}

inline int total_degree(const Exponent& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

inline void sort_grlex(std::vector<Exponent>& v) { std::sort(v.begin(), v.end(), grlex_less); }

/// Degree of an exponent vector under a grading hom Z^n -> G.
inline IntVector exponent_degree(const GroupHom& q, const Exponent& e) {
  IntVector x(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) x[i] = e[i];
  return q.apply(x);
}

struct PointedCertificate {
  bool pointed = true;
  std::vector<Rational> weights;     // positive functional on variables (pointed case)
  std::vector<Rational> functional;  // y with y^T Q_free = weights
  IntVector witness;                 // nonzero e >= 0 with Q e = 0 in G (non-pointed case)
};

namespace detail {

inline RationalMatrix free_rows(const GroupHom& q) {
  RationalMatrix a(q.codomain().free_rank(), std::vector<Rational>(q.domain().num_coords()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] = q.matrix()(i, j);
  return a;
}

}  // namespace detail

/// Decides whether {e >= 0 : Q e = 0} is trivial, with a certificate either way.
inline PointedCertificate pointed_certificate(const GroupHom& q) {
  if (!q.domain().is_free()) throw ValidationError("grading must start from a free group of exponents");
  const std::size_t n = q.domain().num_coords();
  const RationalMatrix a = detail::free_rows(q);
  const std::size_t r = a.size();
  PointedCertificate cert;
  if (n == 0) {
    cert.functional.assign(r, Rational(0));
    return cert;
  }

  // y^T A - s = 1, s >= 0, with y = y+ - y-.
  RationalMatrix lhs(n, std::vector<Rational>(2 * r + n));
  std::vector<Rational> rhs(n, Rational(1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < r; ++i) {
      lhs[j][i] = a[i][j];
      lhs[j][r + i] = -a[i][j];
    }
    lhs[j][2 * r + j] = -1;
  }
  if (auto sol = lp_feasible(lhs, rhs)) {
    cert.functional.resize(r);
    for (std::size_t i = 0; i < r; ++i) cert.functional[i] = (*sol)[i] - (*sol)[r + i];
    cert.weights.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < r; ++i) cert.weights[j] += cert.functional[i] * a[i][j];
    return cert;
  }

  // Gordan alternative: some e >= 0, sum e = 1, A e = 0.
  RationalMatrix k = a;
  k.emplace_back(n, Rational(1));
  std::vector<Rational> kr(r + 1);
  kr[r] = 1;
  auto e = lp_feasible(k, kr);
  if (!e) throw Error("pointedness LP produced no certificate");
  Integer den = 1;
  for (const Rational& v : *e) den = lcm(den, Integer(v.get_den()));
  for (const Integer& t : q.codomain().torsion_orders()) den = lcm(den, t);
  cert.pointed = false;
  cert.witness.resize(n);
  for (std::size_t j = 0; j < n; ++j) cert.witness[j] = Integer((*e)[j] * den);
  return cert;
}

inline bool is_pointed(const GroupHom& q) { return pointed_certificate(q).pointed; }

/// Enumerates degree fibers {e >= 0 : Q e = d in G} for a fixed grading.  The
/// positivity certificate and the echelon form of Q are computed once and
/// scaled to machine integers; queries whose numbers do not fit abort.
class FiberEnumerator {
 public:
  /// Without a cap the grading must be pointed; with a cap each coordinate is
  /// bounded by it.
  explicit FiberEnumerator(GroupHom q, std::optional<int> cap = std::nullopt) : q_(std::move(q)), cap_(cap) {
    const std::size_t n = q_.domain().num_coords();
    const std::size_t rf = q_.codomain().free_rank();
    std::vector<Rational> weights, functional;
    if (!cap_) {
      const PointedCertificate cert = pointed_certificate(q_);
      if (!cert.pointed) throw BoundExceeded("degree fiber is unbounded (grading is not pointed); supply a cap");
      weights = cert.weights;
      functional = cert.functional;
    }
    // Reduced row echelon form of A_free with the row operations recorded, so
    // the right-hand side can be transformed per query.
    std::vector<std::vector<Rational>> m(rf, std::vector<Rational>(n)), ops(rf, std::vector<Rational>(rf));
    for (std::size_t i = 0; i < rf; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = q_.matrix()(i, j);
      ops[i][i] = 1;
    }
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < rf; ++c) {
      std::size_t p = row;
      while (p < rf && m[p][c] == 0) ++p;
      if (p == rf) continue;
      std::swap(m[p], m[row]);
      std::swap(ops[p], ops[row]);
      const Rational inv = 1 / m[row][c];
      for (Rational& v : m[row]) v *= inv;
      for (Rational& v : ops[row]) v *= inv;
      for (std::size_t i = 0; i < rf; ++i) {
        if (i == row || m[i][c] == 0) continue;
        const Rational f = m[i][c];
        for (std::size_t j = 0; j < n; ++j) m[i][j] -= f * m[row][j];
        for (std::size_t j = 0; j < rf; ++j) ops[i][j] -= f * ops[row][j];
      }
      pivots_.push_back(c);
      ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots_) is_pivot[c] = true;
    for (std::size_t c = 0; c < n; ++c)
      if (!is_pivot[c]) free_vars_.push_back(c);

    // Clear denominators row by row: pivot k equals (ops_k . d - m_k . e_free) / 1
    // after scaling both by den_k.
    auto small = [](const Integer& z) -> long long {
      if (abs(z) > Integer(1) << 40) throw BoundExceeded("grading matrix entries too large for fiber enumeration");
      return z.get_si();
    };
    auto lcm_den = [](const std::vector<Rational>& v, Integer l) {
      for (const Rational& x : v) l = lcm(l, Integer(x.get_den()));
      return l;
    };
    for (std::size_t i = 0; i < rf; ++i) {
      Integer l = lcm_den(ops[i], lcm_den(m[i], 1));
      den_.push_back(small(l));
      std::vector<long long> mr, orow;
      for (std::size_t c : free_vars_) mr.push_back(small(Integer(m[i][c] * l)));
      for (std::size_t j = 0; j < rf; ++j) orow.push_back(small(Integer(ops[i][j] * l)));
      m_.push_back(std::move(mr));
      ops_.push_back(std::move(orow));
    }
    if (!cap_) {
      Integer l = lcm_den(functional, lcm_den(weights, 1));
      for (std::size_t c : free_vars_) weights_.push_back(small(Integer(weights[c] * l)));
      for (const Rational& f : functional) functional_.push_back(small(Integer(f * l)));
    }
    // nonneg_from_[k][i]: row i has no negative coefficient on free variables k, k+1, ...
    nonneg_from_.assign(free_vars_.size() + 1, std::vector<bool>(pivots_.size(), true));
    for (std::size_t k = free_vars_.size(); k-- > 0;)
      for (std::size_t i = 0; i < pivots_.size(); ++i) nonneg_from_[k][i] = nonneg_from_[k + 1][i] && m_[i][k] >= 0;
  }

  const GroupHom& grading() const noexcept { return q_; }

  /// Graded-lex ascending list of fiber points.
  std::vector<Exponent> operator()(const IntVector& d) const {
    const AbelianGroup& g = q_.codomain();
    g.check_length(d);
    const std::size_t n = q_.domain().num_coords();
    const std::size_t rf = g.free_rank();
    const std::size_t nf = free_vars_.size();
    const std::size_t np = pivots_.size();

    std::vector<long long> dd(rf);
    for (std::size_t j = 0; j < rf; ++j) {
      if (abs(d[j]) > Integer(1) << 20) throw BoundExceeded("degree too large for fiber enumeration");
      dd[j] = d[j].get_si();
    }
    long long budget = 0;
    if (!cap_) {
      for (std::size_t i = 0; i < rf; ++i) budget += functional_[i] * dd[i];
      if (budget < 0) return {};
    }
    // Residuals r_i = den_i * pivot_i once all free variables are fixed.
    std::vector<long long> res(rf, 0);
    for (std::size_t i = 0; i < rf; ++i)
      for (std::size_t j = 0; j < rf; ++j) res[i] += ops_[i][j] * dd[j];
    for (std::size_t i = np; i < rf; ++i)
      if (res[i] != 0) return {};

    std::vector<Exponent> out;
    Exponent e(n, 0);
    IntVector x(n);

    auto finish = [&]() {
      for (std::size_t k = 0; k < np; ++k) {
        const long long r = res[k];
        if (r < 0 || r % den_[k] != 0) return;
        const long long v = r / den_[k];
        if (cap_ && v > *cap_) return;
        if (v > (1 << 30)) throw BoundExceeded("fiber point exponent too large");
        e[pivots_[k]] = static_cast<int>(v);
      }
      if (!g.is_free()) {
        for (std::size_t j = 0; j < n; ++j) x[j] = e[j];
        if (!g.equal(q_.matrix() * x, d)) return;
      }
      out.push_back(e);
    };

    // Depth-first over the non-pivot variables, pruned by the weight budget and
    // by pivot rows that can no longer become nonnegative.
    auto dfs = [&](auto&& self, std::size_t k, long long left) -> void {
      for (std::size_t i = 0; i < np; ++i)
        if (nonneg_from_[k][i] && res[i] < 0) return;
      if (k == nf) {
        finish();
        return;
      }
      const std::size_t c = free_vars_[k];
      int v = 0;
      for (;; ++v) {
        long long rest = left;
        if (!cap_) {
          rest = left - weights_[k] * v;
          if (rest < 0) break;
        } else if (v > *cap_) {
          break;
        }
        e[c] = v;
        self(self, k + 1, rest);
        for (std::size_t i = 0; i < np; ++i) res[i] -= m_[i][k];
        bool dead = false;
        for (std::size_t i = 0; i < np; ++i)
          if (nonneg_from_[k][i] && m_[i][k] > 0 && res[i] < 0) dead = true;
        if (dead) {
          ++v;
          break;
        }
      }
      for (std::size_t i = 0; i < np; ++i) res[i] += m_[i][k] * v;
      e[c] = 0;
    };
    dfs(dfs, 0, budget);
    sort_grlex(out);
    return out;
  }

 private:
  GroupHom q_;
  std::optional<int> cap_;
  std::vector<long long> weights_, functional_, den_;
  std::vector<std::vector<long long>> m_, ops_;
  std::vector<std::vector<bool>> nonneg_from_;
  std::vector<std::size_t> pivots_, free_vars_;
};

/// All e >= 0 with Q e = d in G, graded-lex ascending.  Without a cap the
/// grading must be pointed; with a cap each coordinate is bounded by it.
inline std::vector<Exponent> fiber_points(const GroupHom& q, const IntVector& d, std::optional<int> cap = std::nullopt) {
  return FiberEnumerator(q, cap)(d);
}

/// Monomials e >= 0 whose degree Q e lies in the subgroup generated by H.
struct FiberMonoid {
  GroupHom degree_matrix;
  std::vector<IntVector> target_subgroup;

  std::size_t num_variables() const { return degree_matrix.domain().num_coords(); }

  bool contains(const Exponent& e) const {
    if (e.size() != num_variables()) return false;
    for (int x : e)
      if (x < 0) return false;
    const IntVector deg = exponent_degree(degree_matrix, e);
    return subgroup_membership(degree_matrix.codomain(), target_subgroup, deg).has_value();
  }
};

/// Minimal generating set of the fiber monoid, graded-lex ascending.  Uses the
/// Contejean-Devie completion on the system Q e = 0 in G/H, where each torsion
/// row a.e = 0 mod t becomes a.e - t y = 0 with a slack variable y >= 0.
inline std::vector<Exponent> hilbert_basis(const FiberMonoid& fm, int degree_cap = 64) {
  const GroupHom& q = fm.degree_matrix;
  if (!is_pointed(q)) throw ValidationError("hilbert basis requested for a non-pointed grading");
  const std::size_t n = fm.num_variables();
  const QuotientResult qr = quotient(q.codomain(), fm.target_subgroup);
  const GroupHom pq = qr.projection.compose(q);
  const AbelianGroup& gq = qr.group;

  // Build the integer system; columns: n variables then one slack per torsion row.
  const std::size_t rows = gq.num_coords();
  const std::size_t tors = gq.torsion_orders().size();
  const std::size_t cols = n + tors;
  std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    const Integer mod = gq.modulus(i);
    for (std::size_t j = 0; j < n; ++j) {
      Integer v = pq.matrix()(i, j);
      if (mod != 0) v = mod_nonneg(v, mod);
      a[i][j] = to_int64(v);
    }
    if (mod != 0) a[i][n + (i - gq.free_rank())] = -to_int64(mod);
  }
  // Drop all-zero rows.
  a.erase(std::remove_if(a.begin(), a.end(),
                         [](const std::vector<long long>& r) {
                           return std::all_of(r.begin(), r.end(), [](long long v) { return v == 0; });
                         }),
          a.end());

  using Vec = std::vector<int>;
  auto image = [&](const Vec& p) {
    std::vector<long long> y(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (p[j]) y[i] += a[i][j] * p[j];
    return y;
  };
  auto geq = [](const Vec& x, const Vec& b) {
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] < b[j]) return false;
    return true;
  };

  std::vector<Vec> basis;
  std::set<Vec> frontier;
  for (std::size_t j = 0; j < cols; ++j) {
    Vec e(cols, 0);
    e[j] = 1;
    frontier.insert(e);
  }
  int level = 1;
  while (!frontier.empty()) {
    if (level > degree_cap)
      throw BoundExceeded("hilbert basis completion exceeded total degree cap " + std::to_string(degree_cap));
    std::vector<std::pair<Vec, std::vector<long long>>> pending;
    for (const Vec& p : frontier) {
      auto y = image(p);
      if (std::all_of(y.begin(), y.end(), [](long long v) { return v == 0; })) {
        basis.push_back(p);
      } else {
        pending.emplace_back(p, std::move(y));
      }
    }
    std::set<Vec> next;
    for (const auto& [p, y] : pending) {
      for (std::size_t j = 0; j < cols; ++j) {
        long long dot = 0;
        for (std::size_t i = 0; i < a.size(); ++i) dot += y[i] * a[i][j];
        if (dot >= 0) continue;
        Vec c = p;
        ++c[j];
        bool dominated = false;
        for (const Vec& b : basis)
          if (geq(c, b)) {
            dominated = true;
            break;
          }
        if (!dominated) next.insert(std::move(c));
      }
    }
    frontier = std::move(next);
    ++level;
  }

  std::vector<Exponent> out;
  for (const Vec& b : basis) out.emplace_back(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(n));
  sort_grlex(out);
  return out;
}

/// Indices (ascending, with repetition) of basis elements summing to e, or
/// nullopt when e is not a sum of basis elements.
inline std::optional<std::vector<std::size_t>> monoid_decompose(const FiberMonoid& fm, const std::vector<Exponent>& basis,
                                                                const Exponent& e) {
  if (!fm.contains(e)) throw ValidationError("exponent vector is not in the fiber monoid");
  std::set<std::pair<Exponent, std::size_t>> dead;
  std::vector<std::size_t> picked;

  auto search = [&](auto&& self, const Exponent& rest, std::size_t from) -> bool {
    if (std::all_of(rest.begin(), rest.end(), [](int v) { return v == 0; })) return true;
    if (dead.count({rest, from})) return false;
    for (std::size_t i = from; i < basis.size(); ++i) {
      const Exponent& b = basis[i];
      bool fits = total_degree(b) > 0;
      for (std::size_t j = 0; j < rest.size() && fits; ++j) fits = b[j] <= rest[j];
      if (!fits) continue;
      Exponent r = rest;
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= b[j];
      picked.push_back(i);
      if (self(self, r, i)) return true;
      picked.pop_back();
    }
    dead.insert({rest, from});
    return false;
  };
  if (!search(search, e, 0)) return std::nullopt;
  return picked;
}

}  // namespace coxring
