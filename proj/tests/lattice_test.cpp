#include <gtest/gtest.h>

#include <random>
#include <set>

#include "coxring/lattice.hpp"
#include "test_support.hpp"

using namespace coxring;
namespace t = coxring::testing;

namespace {

GroupHom hom_from_columns(const std::vector<IntVector>& cols, const AbelianGroup& g) {
  return GroupHom(AbelianGroup::free(cols.size()), g, IntMatrix::from_columns(cols, g.num_coords()));
}

Exponent exps(std::initializer_list<int> v) { return Exponent(v); }

// All e in [0, b]^n with Q e = d in G.
std::vector<Exponent> brute_fiber(const GroupHom& q, const IntVector& d, int b) {
  std::vector<Exponent> out;
  const std::size_t n = q.domain().num_coords();
  Exponent e(n, 0);
  for (;;) {
    if (q.codomain().equal(exponent_degree(q, e), d)) out.push_back(e);
    std::size_t i = 0;
    while (i < n && e[i] == b) e[i++] = 0;
    if (i == n) break;
    ++e[i];
  }
  sort_grlex(out);
  return out;
}

}  // namespace

TEST(Lp, FeasibleAndInfeasible) {
  // x + y = 1, x - y = 0 -> (1/2, 1/2)
  RationalMatrix a = {{1, 1}, {1, -1}};
  auto x = lp_feasible(a, {1, 0});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], Rational(1, 2));
  // x + y = -1 has no nonnegative solution.
  EXPECT_FALSE(lp_feasible({{1, 1}}, {-1}).has_value());
}

TEST(Pointed, Examples) {
  EXPECT_TRUE(is_pointed(t::dp4_grading()));
  const auto cert = pointed_certificate(hom_from_columns({int_vector({1}), int_vector({-1})}, AbelianGroup::free(1)));
  EXPECT_FALSE(cert.pointed);
  EXPECT_EQ(cert.witness, int_vector({1, 1}));
  EXPECT_TRUE(is_pointed(hom_from_columns({}, AbelianGroup::free(2))));
}

TEST(Pointed, Dp4CertificateIsPositive) {
  const auto cert = pointed_certificate(t::dp4_grading());
  ASSERT_TRUE(cert.pointed);
  for (const Rational& w : cert.weights) EXPECT_GE(w, 1);
  // Independent check: no nonzero e in [0,3]^9 has degree zero.
  EXPECT_EQ(brute_fiber(t::dp4_grading(), AbelianGroup::free(6).zero(), 3).size(), 1u);
}

TEST(Pointed, TorsionOnlyDegreesAreNotPointed) {
  const GroupHom q = hom_from_columns({int_vector({1, 1})}, AbelianGroup(1, int_vector({2})));
  EXPECT_TRUE(is_pointed(q));
  const GroupHom r = hom_from_columns({int_vector({0, 1})}, AbelianGroup(1, int_vector({2})));
  const auto cert = pointed_certificate(r);
  EXPECT_FALSE(cert.pointed);
  EXPECT_TRUE(r.codomain().is_zero(r.apply(cert.witness)));
}

TEST(Fiber, Compositions) {
  const GroupHom q = hom_from_columns({int_vector({1}), int_vector({1})}, AbelianGroup::free(1));
  const auto pts = fiber_points(q, int_vector({3}));
  EXPECT_EQ(pts, (std::vector<Exponent>{exps({0, 3}), exps({1, 2}), exps({2, 1}), exps({3, 0})}));
  EXPECT_EQ(fiber_points(q, int_vector({0})), (std::vector<Exponent>{exps({0, 0})}));
  EXPECT_TRUE(fiber_points(q, int_vector({-1})).empty());
}

TEST(Fiber, UnboundedNeedsCap) {
  const GroupHom q = hom_from_columns({int_vector({1}), int_vector({-1})}, AbelianGroup::free(1));
  EXPECT_THROW(fiber_points(q, int_vector({0})), BoundExceeded);
  EXPECT_EQ(fiber_points(q, int_vector({0}), 2).size(), 3u);
}

TEST(Fiber, RandomAgainstBruteForce) {
  std::mt19937 rng(31);
  int checked = 0;
  while (checked < 60) {
    const AbelianGroup g(2, rng() % 2 ? int_vector({3}) : IntVector{});
    const IntMatrix m = t::random_matrix(rng, g.num_coords(), 4, -1, 3);
    const GroupHom q(AbelianGroup::free(4), g, m);
    if (!is_pointed(q)) continue;
    // Pick the degree of a random small exponent so fibers are non-empty.
    Exponent e0(4);
    for (int& v : e0) v = static_cast<int>(rng() % 3);
    const IntVector d = exponent_degree(q, e0);
    const auto pts = fiber_points(q, d);
    int b = 0;
    for (const Exponent& e : pts)
      for (int v : e) b = std::max(b, v);
    EXPECT_EQ(pts, brute_fiber(q, d, std::max(b + 2, 6)));
    ++checked;
  }
}

TEST(Fiber, Dp4AnticanonicalContainsProjectionMonomials) {
  // Free ring on seven generators with degrees in the basis D1, D2, D3+D4, D5+D6.
  const std::vector<IntVector> cols = {int_vector({1, 0, 0, 0}), int_vector({0, 1, 0, 0}), int_vector({0, 0, 1, 0}),
                                       int_vector({0, 0, 0, 1}), int_vector({1, 0, 1, 1}), int_vector({4, 2, 3, 2}),
                                       int_vector({2, 1, 2, 2})};
  const GroupHom q = hom_from_columns(cols, AbelianGroup::free(4));
  const auto pts = fiber_points(q, int_vector({4, 2, 3, 2}));
  const std::set<Exponent> s(pts.begin(), pts.end());
  for (const Exponent& e : {exps({2, 2, 1, 0, 2, 0, 0}), exps({4, 2, 3, 2, 0, 0, 0}), exps({3, 2, 2, 1, 1, 0, 0}),
                            exps({2, 1, 1, 0, 0, 0, 1}), exps({0, 0, 0, 0, 0, 1, 0})})
    EXPECT_TRUE(s.count(e));
}

TEST(HilbertBasis, Dp4Veronese) {
  const FiberMonoid fm{t::dp4_grading(), t::dp4_h_columns()};
  const auto hb = hilbert_basis(fm);
  const std::set<Exponent> got(hb.begin(), hb.end());
  const std::set<Exponent> want = {
      exps({1, 0, 0, 0, 0, 0, 0, 0, 0}), exps({0, 1, 0, 0, 0, 0, 0, 0, 0}), exps({0, 0, 0, 0, 0, 0, 1, 0, 0}),
      exps({0, 0, 1, 1, 0, 0, 0, 0, 0}), exps({0, 0, 0, 0, 1, 1, 0, 0, 0}), exps({0, 0, 0, 0, 0, 0, 0, 1, 1}),
      exps({0, 0, 1, 0, 2, 0, 0, 1, 0}), exps({0, 0, 0, 1, 0, 2, 0, 0, 1})};
  EXPECT_EQ(hb.size(), 8u);
  EXPECT_EQ(got, want);
  EXPECT_TRUE(std::is_sorted(hb.begin(), hb.end(), grlex_less));
}

TEST(HilbertBasis, WholeGroupGivesUnitVectors) {
  const FiberMonoid fm{t::dp4_grading(), {int_vector({1, 0, 0, 0, 0, 0}), int_vector({0, 1, 0, 0, 0, 0}),
                                          int_vector({0, 0, 1, 0, 0, 0}), int_vector({0, 0, 0, 1, 0, 0}),
                                          int_vector({0, 0, 0, 0, 1, 0}), int_vector({0, 0, 0, 0, 0, 1})}};
  const auto hb = hilbert_basis(fm);
  ASSERT_EQ(hb.size(), 9u);
  for (const Exponent& e : hb) EXPECT_EQ(total_degree(e), 1);
}

TEST(HilbertBasis, NonPointedRejected) {
  const GroupHom q = hom_from_columns({int_vector({1}), int_vector({-1})}, AbelianGroup::free(1));
  EXPECT_THROW(hilbert_basis(FiberMonoid{q, {}}), ValidationError);
}

TEST(HilbertBasis, TorsionTarget) {
  // x in degree 1 of Z, subgroup 3Z: generator x^3 only.
  const GroupHom q = hom_from_columns({int_vector({1})}, AbelianGroup::free(1));
  EXPECT_EQ(hilbert_basis(FiberMonoid{q, {int_vector({3})}}), (std::vector<Exponent>{exps({3})}));
  // x, y in degrees 1 and 2 of Z/4 + Z (free part counts total), subgroup generated by (0,1)... via quotient torsion.
  const GroupHom r = hom_from_columns({int_vector({1, 1}), int_vector({1, 2})}, AbelianGroup(1, int_vector({4})));
  const FiberMonoid fm{r, {int_vector({1, 0})}};
  const auto hb = hilbert_basis(fm);
  for (const Exponent& e : hb) EXPECT_TRUE(fm.contains(e));
  EXPECT_EQ(hb, (std::vector<Exponent>{exps({0, 2}), exps({2, 1}), exps({4, 0})}));
}

TEST(Decompose, Examples) {
  const FiberMonoid fm{t::dp4_grading(), t::dp4_h_columns()};
  const auto hb = hilbert_basis(fm);
  const Exponent e = exps({0, 0, 1, 1, 1, 1, 0, 0, 0});
  const auto d = monoid_decompose(fm, hb, e);
  ASSERT_TRUE(d.has_value());
  ASSERT_EQ(d->size(), 2u);
  Exponent sum(9, 0);
  for (std::size_t i : *d)
    for (std::size_t j = 0; j < 9; ++j) sum[j] += hb[i][j];
  EXPECT_EQ(sum, e);
  EXPECT_EQ(monoid_decompose(fm, hb, Exponent(9, 0)), std::vector<std::size_t>{});
  EXPECT_THROW(monoid_decompose(fm, hb, exps({1, 1, 0, 0, 0, 0, 0, 0, 1})), ValidationError);
}

// Random gradings with at most five variables and degree group Z^2: the
// Hilbert basis generates every monoid element in [0,8]^n and is minimal.
TEST(HilbertBasis, RandomCompletenessAndMinimality) {
  std::mt19937 rng(2024);
  int done = 0;
  while (done < 50) {
    const std::size_t n = 2 + rng() % 4;
    const GroupHom q(AbelianGroup::free(n), AbelianGroup::free(2), t::random_matrix(rng, 2, n, -2, 3));
    if (!is_pointed(q)) continue;
    const std::vector<IntVector> h = {t::random_matrix(rng, 2, 1, -2, 2).column(0)};
    const FiberMonoid fm{q, h};
    const auto hb = hilbert_basis(fm);
    const int b = n <= 3 ? 8 : (n == 4 ? 5 : 3);
    Exponent e(n, 0);
    std::vector<Exponent> members;
    for (;;) {
      if (fm.contains(e)) members.push_back(e);
      std::size_t i = 0;
      while (i < n && e[i] == b) e[i++] = 0;
      if (i == n) break;
      ++e[i];
    }
    for (const Exponent& m : members) EXPECT_TRUE(monoid_decompose(fm, hb, m).has_value());
    // Minimality: no basis element is a sum of two nonzero members.
    const std::set<Exponent> mem(members.begin(), members.end());
    for (const Exponent& g : hb) {
      bool split = false;
      for (const Exponent& a : members) {
        if (total_degree(a) == 0 || a == g) continue;
        Exponent rest(n);
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) ok = (rest[j] = g[j] - a[j]) >= 0;
        if (ok && mem.count(rest)) split = true;
      }
      EXPECT_FALSE(split);
    }
    ++done;
  }
}

TEST(HilbertBasis, Deterministic) {
  const FiberMonoid fm{t::dp4_grading(), t::dp4_h_columns()};
  EXPECT_EQ(hilbert_basis(fm), hilbert_basis(fm));
}
