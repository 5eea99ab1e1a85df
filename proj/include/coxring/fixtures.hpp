#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "coxring/galois.hpp"
#include "coxring/parse.hpp"
#include "coxring/presentation.hpp"
#include "coxring/torsor.hpp"

namespace coxring::fixtures {

// ---- del Pezzo surface of degree 4 with a D4 singularity -------------------
// Pic of the minimal desingularization in the basis l0..l5.

inline std::vector<IntVector> dp4_degrees() {
  return {int_vector({0, 0, 1, -1, 0, 0}),  int_vector({0, 1, -1, 0, 0, 0}), int_vector({1, -1, -1, 0, 0, -1}),
          int_vector({0, 0, 0, 1, -1, 0}),  int_vector({0, 0, 0, 0, 0, 1}),  int_vector({0, 0, 0, 0, 1, 0}),
          int_vector({1, -1, 0, 0, 0, 0}),  int_vector({1, 0, 0, 0, 0, -1}), int_vector({2, -1, -1, -1, -1, 0})};
}

/// Identity-type Cox ring over Q(i): nine generators, one relation.
inline GradedPresentation dp4_ring() {
  GradedPresentation r;
  r.group = AbelianGroup::free(6);
  r.field = gaussian_rationals();
  for (int i = 1; i <= 9; ++i) r.names.push_back("eta" + std::to_string(i));
  r.degrees = dp4_degrees();
  r.relations.push_back(parse_polynomial("eta2*eta7^2 + eta3*eta5^2*eta8 + eta4*eta6^2*eta9", r.names, r.field));
  r.validate();
  return r;
}

/// [D1], [D2], [D3 + D4], [D5 + D6]: the classes fixed by the Galois action.
inline std::vector<IntVector> dp4_subgroup() {
  const auto d = dp4_degrees();
  auto add = [](IntVector a, const IntVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  };
  return {d[0], d[1], add(d[2], d[3]), add(d[4], d[5])};
}

/// Anticanonical class 3 l0 - l1 - ... - l5.
inline IntVector dp4_anticanonical() { return int_vector({3, -1, -1, -1, -1, -1}); }

/// The ample class 11 D1 + 5 D2 + 9 (D3 + D4) + 8 (D5 + D6), in the subgroup basis.
inline IntVector dp4_ample_in_subgroup() { return int_vector({11, 5, 9, 8}); }

/// Complex conjugation exchanging eta3, eta4 and eta5, eta6 and eta8, eta9.
inline SemilinearAction dp4_action(const GradedPresentation& r) {
  return {{permutation_generator(r, {0, 1, 3, 2, 5, 4, 6, 8, 7}, 1)}};
}

/// The seven generators over Q and their degrees in the subgroup basis.
inline GradedPresentation dp4_rational_ring() {
  GradedPresentation r;
  r.group = AbelianGroup::free(4);
  r.names = {"xi1", "xi2", "xi3", "xi4", "xi5", "xi6", "xi7"};
  r.degrees = {int_vector({1, 0, 0, 0}), int_vector({0, 1, 0, 0}), int_vector({0, 0, 1, 0}), int_vector({0, 0, 0, 1}),
               int_vector({1, 0, 1, 1}), int_vector({4, 2, 3, 2}), int_vector({2, 1, 2, 2})};
  r.relations.push_back(parse_polynomial("xi7^2 + xi2^2*xi5^4 - xi3*xi4^2*xi6", r.names));
  r.validate();
  return r;
}

/// Integral model of the universal torsor: coprimality conditions and the
/// anticanonical map to the quartic surface x0 x1 - x2^2 = x0^2 - x1 x4 + x3^2 = 0.
inline ParamScheme dp4_scheme() {
  ParamScheme ps;
  ps.presentation = dp4_rational_ring();
  const auto& names = ps.presentation.names;
  auto mono = [&](const std::string& s) { return parse_polynomial(s, names).leading_exponent(); };
  auto idx = [&](const std::string& s) { return *ps.presentation.index_of(s); };
  ps.coprime = {{idx("xi1"), mono("xi4*xi5*xi6")},
                {idx("xi2"), mono("xi3*xi4*xi6*xi7")},
                {idx("xi3"), mono("xi5*xi6*xi7")},
                {idx("xi4"), mono("xi5*xi7")}};
  ps.projection = {mono("xi1^2*xi2^2*xi3*xi5^2"), mono("xi1^4*xi2^2*xi3^3*xi4^2"), mono("xi1^3*xi2^2*xi3^2*xi4*xi5"),
                   mono("xi1^2*xi2*xi3*xi7"), mono("xi6")};
  ps.coordinates = {"x0", "x1", "x2", "x3", "x4"};
  ps.surface = {parse_polynomial("x0*x1 - x2^2", ps.coordinates),
                parse_polynomial("x0^2 - x1*x4 + x3^2", ps.coordinates)};
  ps.ample = dp4_ample_in_subgroup();
  ps.validate();
  return ps;
}

// ---- Chatelet surfaces X^2 + Y^2 = T^2 prod (a_j U + b_j V) ----------------
// Pic of the closure is Z^10 / Lambda0 with the basis
// [L0+], [L1+], [L1-], [L2+], [L3+], [L4+].

using LinearForms = std::array<std::pair<Rational, Rational>, 4>;

inline LinearForms chatelet_default_forms() {
  return {{{Rational(1), Rational(0)}, {Rational(1), Rational(-1)}, {Rational(1), Rational(-2)}, {Rational(1), Rational(-3)}}};
}

/// Names in the order L0+, L0-, L1+, L1-, ..., L4+, L4-.
inline std::vector<std::string> chatelet_names() {
  std::vector<std::string> n;
  for (int j = 0; j <= 4; ++j) {
    n.push_back("eta" + std::to_string(j) + "p");
    n.push_back("eta" + std::to_string(j) + "m");
  }
  return n;
}

inline std::vector<IntVector> chatelet_degrees() {
  return {int_vector({1, 0, 0, 0, 0, 0}), int_vector({1, -1, -2, 1, 1, 1}), int_vector({0, 1, 0, 0, 0, 0}),
          int_vector({0, 0, 1, 0, 0, 0}), int_vector({0, 0, 0, 1, 0, 0}),   int_vector({0, 1, 1, -1, 0, 0}),
          int_vector({0, 0, 0, 0, 1, 0}), int_vector({0, 1, 1, 0, -1, 0}),  int_vector({0, 0, 0, 0, 0, 1}),
          int_vector({0, 1, 1, 0, 0, -1})};
}

/// Delta_{ij} = a_i b_j - a_j b_i for 1-based i, j.
inline Rational chatelet_delta(const LinearForms& f, int i, int j) {
  return f[i - 1].first * f[j - 1].second - f[j - 1].first * f[i - 1].second;
}

/// Identity-type Cox ring of the closure: ten generators, four relations
/// Delta_ij z_l + Delta_jl z_i + Delta_li z_j with z_j = eta_j+ eta_j-.
inline GradedPresentation chatelet_ring(const LinearForms& f = chatelet_default_forms()) {
  GradedPresentation r;
  r.group = AbelianGroup::free(6);
  r.field = gaussian_rationals();
  r.names = chatelet_names();
  r.degrees = chatelet_degrees();
  auto z = [&](int j) { return r.var(2 * j) * r.var(2 * j + 1); };
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      for (int l = j + 1; l <= 4; ++l)
        r.relations.push_back(Scalar(chatelet_delta(f, i, j)) * z(l) + Scalar(chatelet_delta(f, j, l)) * z(i) +
                              Scalar(chatelet_delta(f, l, i)) * z(j));
  r.validate();
  return r;
}

/// Generators of Lambda0 in Z^10 (same variable order as chatelet_names).
inline std::vector<IntVector> chatelet_lambda0() {
  auto e = [](std::initializer_list<std::pair<int, int>> terms) {
    IntVector v(10);
    for (auto [idx, c] : terms) v[static_cast<std::size_t>(idx)] += c;
    return v;
  };
  // E_{1,j} for j = 2, 3, 4 and E_{{1,2},{3,4}}.
  return {e({{2, 1}, {3, 1}, {4, -1}, {5, -1}}), e({{2, 1}, {3, 1}, {6, -1}, {7, -1}}),
          e({{2, 1}, {3, 1}, {8, -1}, {9, -1}}), e({{0, 1}, {2, 1}, {4, 1}, {1, -1}, {7, -1}, {9, -1}})};
}

/// Pic of the surface over the ground field: [L0+ + L0-], [L1+ + L1-].
inline std::vector<IntVector> chatelet_invariant_subgroup() {
  return {int_vector({2, -1, -2, 1, 1, 1}), int_vector({0, 1, 1, 0, 0, 0})};
}

/// Complex conjugation exchanging Lj+ and Lj-.
inline SemilinearAction chatelet_action(const GradedPresentation& r) {
  std::vector<std::size_t> perm;
  for (std::size_t j = 0; j < 5; ++j) {
    perm.push_back(2 * j + 1);
    perm.push_back(2 * j);
  }
  return {{permutation_generator(r, perm, 1)}};
}

/// Names of the descended generators: s_j = (Lj+ + Lj-)/2, t_j = (Lj+ - Lj-)/(2i).
inline std::vector<std::string> chatelet_descended_names() {
  std::vector<std::string> n;
  for (int j = 0; j <= 4; ++j) {
    n.push_back("s" + std::to_string(j));
    n.push_back("t" + std::to_string(j));
  }
  return n;
}

/// Delta_ij (s_l^2 + t_l^2) + n_{i,l} Delta_jl (s_i^2 + t_i^2) + n_{j,l} Delta_li (s_j^2 + t_j^2),
/// with n_{a,b} = n_a / n_b, in the variables s0, t0, ..., s4, t4.
inline std::vector<Polynomial> chatelet_descended_relations(const LinearForms& f, const std::array<Rational, 4>& n) {
  const std::size_t nv = 10;
  auto q = [&](int j) {
    const Polynomial s = Polynomial::variable(nv, static_cast<std::size_t>(2 * j));
    const Polynomial t = Polynomial::variable(nv, static_cast<std::size_t>(2 * j + 1));
    return s * s + t * t;
  };
  auto nn = [&](int a, int b) { return Scalar(n[static_cast<std::size_t>(a - 1)] / n[static_cast<std::size_t>(b - 1)]); };
  std::vector<Polynomial> out;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      for (int l = j + 1; l <= 4; ++l)
        out.push_back(Scalar(chatelet_delta(f, i, j)) * q(l) + nn(i, l) * Scalar(chatelet_delta(f, j, l)) * q(i) +
                      nn(j, l) * Scalar(chatelet_delta(f, l, i)) * q(j));
  return out;
}

/// Cox ring of injective type over Q: X^2 + Y^2 = T^2 prod (a_j U + b_j V),
/// graded by Pic = Z [L0+ + L0-] + Z [L1+ + L1-].
inline GradedPresentation chatelet_injective_ring(const LinearForms& f = chatelet_default_forms()) {
  GradedPresentation r;
  r.group = AbelianGroup::free(2);
  r.names = {"X", "Y", "T", "U", "V"};
  r.degrees = {int_vector({1, 2}), int_vector({1, 2}), int_vector({1, 0}), int_vector({0, 1}), int_vector({0, 1})};
  Polynomial prod = r.var("T") * r.var("T");
  for (const auto& [a, b] : f) prod = prod * (Scalar(a) * r.var("U") + Scalar(b) * r.var("V"));
  r.relations.push_back(r.var("X") * r.var("X") + r.var("Y") * r.var("Y") - prod);
  r.validate();
  return r;
}

/// Anticanonical map (X : Y : T) -> (T U^2 : T U V : T V^2 : X : Y) onto the
/// quartic model x0 x2 = x1^2, x3^2 + x4^2 = (T L1 L2)(T L3 L4).
inline ParamScheme chatelet_scheme(const LinearForms& f = chatelet_default_forms()) {
  ParamScheme ps;
  ps.presentation = chatelet_injective_ring(f);
  const auto& names = ps.presentation.names;
  auto mono = [&](const std::string& s) { return parse_polynomial(s, names).leading_exponent(); };
  ps.coprime = {{*ps.presentation.index_of("U"), mono("V")}};
  ps.projection = {mono("T*U^2"), mono("T*U*V"), mono("T*V^2"), mono("X"), mono("Y")};
  ps.coordinates = {"x0", "x1", "x2", "x3", "x4"};
  const std::size_t nc = ps.coordinates.size();
  auto x = [&](std::size_t i) { return Polynomial::variable(nc, i); };
  auto quadric = [&](std::size_t j, std::size_t k) {
    const auto& [aj, bj] = f[j];
    const auto& [ak, bk] = f[k];
    return Scalar(aj * ak) * x(0) + Scalar(aj * bk + ak * bj) * x(1) + Scalar(bj * bk) * x(2);
  };
  ps.surface = {x(0) * x(2) - x(1) * x(1), x(3) * x(3) + x(4) * x(4) - quadric(0, 1) * quadric(2, 3)};
  ps.validate();
  return ps;
}

// ---- P^1 x P^1 ----------------------------------------------------------------

inline GradedPresentation p1xp1_ring() {
  GradedPresentation r;
  r.group = AbelianGroup::free(2);
  r.names = {"x0", "x1", "y0", "y1"};
  r.degrees = {int_vector({1, 0}), int_vector({1, 0}), int_vector({0, 1}), int_vector({0, 1})};
  return r;
}

/// a -> (a, -a).
inline GroupHom p1xp1_antidiagonal() {
  return GroupHom(AbelianGroup::free(1), AbelianGroup::free(2), IntMatrix::from_columns({int_vector({1, -1})}));
}

}  // namespace coxring::fixtures
