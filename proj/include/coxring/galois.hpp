#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coxring/abgroup.hpp"
#include "coxring/numfield.hpp"
#include "coxring/presentation.hpp"
#include "coxring/veronese.hpp"

namespace coxring {

/// One generator g of a finite abelian group acting semilinearly on
/// F[x_1..x_n]: g(c x_i) = g(c) * multipliers[i] * x_perm[i], where g(c) is the
/// tower conjugation `field_mask`, and g moves degrees by `grading`.
struct GaloisGenerator {
  std::vector<std::size_t> perm;
  std::vector<Scalar> multipliers;
  GroupHom grading;
  unsigned field_mask = 0;
  int order = 2;
};

struct SemilinearAction {
  std::vector<GaloisGenerator> generators;
};

/// A group element in the same normal form as a generator.
struct GaloisElement {
  std::vector<int> word;  // exponent of each generator
  std::vector<std::size_t> perm;
  std::vector<Scalar> multipliers;
  GroupHom grading;
  unsigned field_mask = 0;

  bool same_action(const GaloisElement& o) const {
    if (perm != o.perm || multipliers != o.multipliers || field_mask != o.field_mask) return false;
    const AbelianGroup& g = grading.codomain();
    for (std::size_t k = 0; k < g.num_coords(); ++k) {
      IntVector e = g.zero();
      e[k] = 1;
      if (!g.equal(grading.apply(e), o.grading.apply(e))) return false;
    }
    return true;
  }
};

inline GaloisElement identity_element(std::size_t nvars, const AbelianGroup& group, std::size_t ngens = 0) {
  GaloisElement e{std::vector<int>(ngens, 0), {}, std::vector<Scalar>(nvars, Scalar(1)), GroupHom::identity(group), 0};
  for (std::size_t i = 0; i < nvars; ++i) e.perm.push_back(i);
  return e;
}

inline GaloisElement as_element(const GaloisGenerator& g, std::size_t index, std::size_t ngens) {
  GaloisElement e{std::vector<int>(ngens, 0), g.perm, g.multipliers, g.grading, g.field_mask};
  e.word[index] = 1;
  return e;
}

/// g o h.
inline GaloisElement compose(const GaloisElement& g, const GaloisElement& h) {
  GaloisElement r;
  r.word = g.word;
  for (std::size_t i = 0; i < r.word.size() && i < h.word.size(); ++i) r.word[i] += h.word[i];
  const std::size_t n = h.perm.size();
  r.perm.resize(n);
  r.multipliers.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.perm[i] = g.perm[h.perm[i]];
    r.multipliers[i] = h.multipliers[i].conjugate_mask(g.field_mask) * g.multipliers[h.perm[i]];
  }
  r.grading = g.grading.compose(h.grading);
  r.field_mask = g.field_mask ^ h.field_mask;
  return r;
}

/// Semilinear image of f.
inline Polynomial apply(const GaloisElement& g, const Polynomial& f) {
  Polynomial r(f.num_variables());
  for (const auto& [e, c] : f.terms()) {
    Exponent ne(e.size(), 0);
    Scalar k = c.conjugate_mask(g.field_mask);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      ne[g.perm[i]] += e[i];
      for (int t = 0; t < e[i]; ++t) k *= g.multipliers[i];
    }
    r.add_term(std::move(ne), k);
  }
  return r;
}

/// All group elements g_1^k_1 ... g_r^k_r with 0 <= k_j < order_j.
inline std::vector<GaloisElement> group_elements(const SemilinearAction& a, std::size_t nvars,
                                                 const AbelianGroup& group) {
  const std::size_t r = a.generators.size();
  std::vector<GaloisElement> out{identity_element(nvars, group, r)};
  for (std::size_t j = 0; j < r; ++j) {
    const GaloisElement g = as_element(a.generators[j], j, r);
    std::vector<GaloisElement> next;
    for (const GaloisElement& x : out) {
      GaloisElement p = x;
      for (int k = 0; k < a.generators[j].order; ++k) {
        next.push_back(p);
        p = compose(g, p);
      }
    }
    out = std::move(next);
  }
  return out;
}

/// The automorphism A of the grading group with A deg(x_i) = deg(x_perm[i]).
/// Requires the generator degrees to generate the group.
inline GroupHom grading_from_permutation(const GradedPresentation& r, const std::vector<std::size_t>& perm) {
  const AbelianGroup& g = r.group;
  IntMatrix m(g.num_coords(), g.num_coords());
  for (std::size_t k = 0; k < g.num_coords(); ++k) {
    IntVector e = g.zero();
    e[k] = 1;
    const auto c = subgroup_membership(g, r.degrees, e);
    if (!c) throw ValidationError("generator degrees do not generate the grading group");
    IntVector img = g.zero();
    for (std::size_t i = 0; i < c->size(); ++i) img = g.add(img, g.scale(r.degrees[perm.at(i)], (*c)[i]));
    for (std::size_t row = 0; row < g.num_coords(); ++row) m(row, k) = img[row];
  }
  GroupHom a(g, g, m);
  for (std::size_t i = 0; i < r.num_variables(); ++i)
    if (!g.equal(a.apply(r.degrees[i]), r.degrees[perm[i]]))
      throw ValidationError("permutation is not induced by a group automorphism: " + r.names[i] + " -> " +
                            r.names[perm[i]]);
  return a;
}

/// Generator with trivial multipliers and the grading induced by `perm`.
inline GaloisGenerator permutation_generator(const GradedPresentation& r, std::vector<std::size_t> perm,
                                             unsigned field_mask, int order = 2) {
  GaloisGenerator g;
  g.grading = grading_from_permutation(r, perm);
  g.perm = std::move(perm);
  g.multipliers.assign(r.num_variables(), Scalar(1));
  g.field_mask = field_mask;
  g.order = order;
  return g;
}

// ---- validation -------------------------------------------------------------

struct ActionCheck {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct ActionReport {
  std::vector<ActionCheck> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ActionCheck& c) { return c.passed; });
  }
};

inline ActionReport check_action(const GradedPresentation& r, const SemilinearAction& a) {
  ActionReport rep;
  const std::size_t n = r.num_variables();
  const std::size_t ng = a.generators.size();
  auto fail = [](ActionCheck& c, std::string w) {
    if (c.passed) c.witness = std::move(w);
    c.passed = false;
  };

  ActionCheck shape{"shape", true, {}};
  for (std::size_t j = 0; j < ng; ++j) {
    const GaloisGenerator& g = a.generators[j];
    const std::string tag = "generator " + std::to_string(j + 1) + ": ";
    std::vector<bool> hit(n, false);
    bool perm_ok = g.perm.size() == n;
    for (std::size_t p : g.perm) {
      if (p >= n || hit[p]) perm_ok = false;
      if (p < n) hit[p] = true;
    }
    if (!perm_ok) fail(shape, tag + "not a permutation of the " + std::to_string(n) + " variables");
    if (g.multipliers.size() != n) fail(shape, tag + "expected one multiplier per variable");
    for (const Scalar& s : g.multipliers)
      if (s.is_zero()) fail(shape, tag + "zero multiplier");
    if (!(g.grading.domain() == r.group) || !(g.grading.codomain() == r.group))
      fail(shape, tag + "grading map is not an endomorphism of " + r.group.str());
    if (g.order < 1) fail(shape, tag + "order must be positive");
    if (g.field_mask >= (1u << r.field->depth())) fail(shape, tag + "field mask exceeds the tower depth");
  }
  rep.checks.push_back(shape);
  if (!shape.passed) return rep;

  ActionCheck degrees{"degree compatibility", true, {}};
  for (std::size_t j = 0; j < ng; ++j) {
    const GaloisGenerator& g = a.generators[j];
    for (std::size_t i = 0; i < n; ++i)
      if (!r.group.equal(g.grading.apply(r.degrees[i]), r.degrees[g.perm[i]]))
        fail(degrees, "generator " + std::to_string(j + 1) + " sends " + r.names[i] + " of degree " +
                          degree_string(r.degrees[i]) + " to " + r.names[g.perm[i]] + " of degree " +
                          degree_string(r.degrees[g.perm[i]]) + ", expected " +
                          degree_string(r.group.reduce(g.grading.apply(r.degrees[i]))));
  }
  rep.checks.push_back(degrees);

  ActionCheck order{"order", true, {}};
  const GaloisElement id = identity_element(n, r.group);
  for (std::size_t j = 0; j < ng; ++j) {
    GaloisElement p = identity_element(n, r.group);
    const GaloisElement g = as_element(a.generators[j], 0, 1);
    for (int k = 0; k < a.generators[j].order; ++k) p = compose(g, p);
    p.word.clear();
    if (!p.same_action(id))
      fail(order, "generator " + std::to_string(j + 1) + " to the power " + std::to_string(a.generators[j].order) +
                      " is not the identity");
  }
  rep.checks.push_back(order);

  ActionCheck commute{"commutation", true, {}};
  for (std::size_t j = 0; j < ng; ++j)
    for (std::size_t k = j + 1; k < ng; ++k) {
      const GaloisElement gj = as_element(a.generators[j], 0, 1), gk = as_element(a.generators[k], 0, 1);
      if (!compose(gj, gk).same_action(compose(gk, gj)))
        fail(commute, "generators " + std::to_string(j + 1) + " and " + std::to_string(k + 1) + " do not commute");
    }
  rep.checks.push_back(commute);

  ActionCheck ideal{"relation ideal stable", true, {}};
  if (!degrees.passed) {
    fail(ideal, "skipped: degrees are not compatible");
  } else {
    for (std::size_t j = 0; j < ng; ++j) {
      const GaloisElement g = as_element(a.generators[j], 0, 1);
      for (std::size_t k = 0; k < r.relations.size(); ++k) {
        const Polynomial img = apply(g, r.relations[k]);
        if (!ideal_member(r, img).member)
          fail(ideal, "generator " + std::to_string(j + 1) + " maps relation " + std::to_string(k + 1) + " to " +
                          img.str(r.names) + ", which is not in the ideal");
      }
    }
  }
  rep.checks.push_back(ideal);
  return rep;
}

// ---- descent ----------------------------------------------------------------

/// The action of `a` (given on pr.ambient) on the generators of pr.  Each
/// generator image must be sent to a scalar multiple of another one.
inline SemilinearAction induced_action(const PullbackResult& pr, const SemilinearAction& a) {
  SemilinearAction out;
  const std::size_t n = pr.images.size();
  for (std::size_t j = 0; j < a.generators.size(); ++j) {
    const GaloisElement g = as_element(a.generators[j], 0, 1);
    GaloisGenerator h;
    h.field_mask = g.field_mask;
    h.order = a.generators[j].order;
    for (std::size_t i = 0; i < n; ++i) {
      const Polynomial w = apply(g, pr.images[i]);
      std::optional<std::size_t> hit;
      Scalar mu;
      for (std::size_t k = 0; k < n && !hit; ++k) {
        if (w.is_zero() || pr.images[k].is_zero() || w.leading_exponent() != pr.images[k].leading_exponent()) continue;
        mu = w.leading_coefficient() / pr.images[k].leading_coefficient();
        if (w == mu * pr.images[k]) hit = k;
      }
      if (!hit)
        throw ValidationError("the action does not permute the generators: " + pr.presentation.names[i] +
                              " has no image among them");
      h.perm.push_back(*hit);
      h.multipliers.push_back(mu);
    }
    h.grading = grading_from_permutation(pr.presentation, h.perm);
    out.generators.push_back(std::move(h));
  }
  return out;
}

struct DescentOptions {
  int degree_bound = 6;
  bool minimize = true;
  std::vector<std::string> names;  // one per invariant generator, before minimization
};

struct DescentResult {
  GradedPresentation presentation;  // over the fixed field, graded by coinvariants
  std::vector<Polynomial> images;   // generators in the variables of the input presentation
  GroupHom projection;              // input grading group -> coinvariants
};

namespace detail {

// Basis of the tower over Q: products of inverse roots, indexed by subsets.
inline std::vector<Scalar> fixed_field_basis(const TowerPtr& field) {
  std::vector<Scalar> basis;
  const std::size_t depth = field->depth();
  for (unsigned s = 0; s < (1u << depth); ++s) {
    Scalar b(1);
    for (std::size_t l = 1; l <= depth; ++l)
      if (s & (1u << (l - 1))) b = b / TowerElement::root(field, l);
    basis.push_back(b);
  }
  return basis;
}

inline Polynomial reynolds(const std::vector<GaloisElement>& elems, const Polynomial& f) {
  Polynomial sum(f.num_variables());
  for (const GaloisElement& g : elems) sum += apply(g, f);
  return Scalar(Rational(1, static_cast<long>(elems.size()))) * sum;
}

inline SparseRow<Scalar> monomial_row(const Polynomial& f, std::map<Exponent, std::size_t>& index) {
  SparseRow<Scalar> row;
  for (const auto& [e, c] : f.terms()) {
    auto it = index.find(e);
    if (it == index.end()) it = index.emplace(e, index.size()).first;
    row.emplace(it->second, c);
  }
  return row;
}

// Inverse of a small square matrix over the tower.
inline std::vector<std::vector<Scalar>> invert(std::vector<std::vector<Scalar>> a) {
  const std::size_t k = a.size();
  std::vector<std::vector<Scalar>> inv(k, std::vector<Scalar>(k));
  for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (p < k && a[p][c].is_zero()) ++p;
    if (p == k) throw Error("internal: orbit change of basis is singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Scalar s = a[c][c].inverse();
    for (std::size_t j = 0; j < k; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      const Scalar f = a[i][c];
      for (std::size_t j = 0; j < k; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace detail

/// Coinvariants M / <g m - m>, with the projection.  Returns M itself when the
/// action on degrees is trivial.
inline QuotientResult coinvariant_grading(const AbelianGroup& m, const SemilinearAction& a) {
  std::vector<IntVector> rel;
  for (const GaloisGenerator& g : a.generators)
    for (std::size_t k = 0; k < m.num_coords(); ++k) {
      IntVector e = m.zero();
      e[k] = 1;
      IntVector d = m.sub(g.grading.apply(e), e);
      if (!m.is_zero(d)) rel.push_back(std::move(d));
    }
  if (rel.empty()) return {m, GroupHom::identity(m)};
  return quotient(m, rel);
}

/// Descent of p to the fixed field of a Galois action: invariant generators are
/// Reynolds averages b*v over each orbit (b running over a basis of the tower
/// over Q), relations are the substituted relations of p made rational by the
/// same averaging.  The group must act on the tower as its full Galois group.
inline DescentResult invariant_ring(const GradedPresentation& p, const SemilinearAction& a,
                                    const DescentOptions& opt = {}) {
  p.validate();
  const std::size_t n = p.num_variables();
  for (const GaloisGenerator& g : a.generators)
    for (std::size_t i = 0; i < n; ++i)
      if (g.perm.size() != n || !p.group.equal(g.grading.apply(p.degrees[i]), p.degrees[g.perm.at(i)]))
        throw ValidationError("action is not compatible with the degrees");
  const std::vector<GaloisElement> elems = group_elements(a, n, p.group);
  {
    std::set<unsigned> masks;
    for (const GaloisElement& g : elems) masks.insert(g.field_mask);
    const std::size_t full = std::size_t{1} << p.field->depth();
    if (masks.size() != elems.size() || elems.size() != full)
      throw ValidationError("descent needs the group to act on " + p.field->str() +
                            " as its full Galois group over Q");
  }
  const std::vector<Scalar> basis = detail::fixed_field_basis(p.field);
  const QuotientResult coinv = coinvariant_grading(p.group, a);

  // Orbits in order of their smallest variable.
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::set<std::size_t> o;
    for (const GaloisElement& g : elems) o.insert(g.perm[i]);
    for (std::size_t v : o) seen[v] = true;
    orbits.emplace_back(o.begin(), o.end());
  }

  GradedPresentation out;
  out.group = coinv.group;
  out.field = rationals();
  std::vector<Polynomial> images;
  std::vector<Polynomial> back(n);  // y_i as a polynomial in the new generators
  std::vector<std::vector<Scalar>> forms;
  std::vector<std::size_t> orbit_of_gen;
  for (std::size_t oi = 0; oi < orbits.size(); ++oi) {
    const auto& o = orbits[oi];
    // Representative: the first variable as reached from the last one.
    Polynomial v = Polynomial::variable(n, o.front());
    for (const GaloisElement& g : elems)
      if (g.perm[o.back()] == o.front()) {
        v = apply(g, Polynomial::variable(n, o.back()));
        break;
      }
    EchelonBasis<Scalar> span;
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t b = 0; b < basis.size() && rows.size() < o.size(); ++b)
      for (std::size_t h = 0; h < o.size() && rows.size() < o.size(); ++h) {
        Polynomial w = v;
        if (h > 0) {
          // Other orbit members, as images of the representative.
          for (const GaloisElement& g : elems)
            if (g.perm[o.front()] == o[h]) {
              w = apply(g, v);
              break;
            }
        }
        const Polynomial z = detail::reynolds(elems, basis[b] * w);
        SparseRow<Scalar> row;
        std::vector<Scalar> coeffs(o.size());
        for (std::size_t t = 0; t < o.size(); ++t) {
          Exponent e(n, 0);
          e[o[t]] = 1;
          coeffs[t] = z.coefficient(e);
          if (!coeffs[t].is_zero()) row.emplace(t, coeffs[t]);
        }
        if (row.empty() || !span.insert(row)) continue;
        rows.push_back(coeffs);
        images.push_back(z);
      }
    if (rows.size() != o.size()) throw Error("internal: orbit of " + p.names[o.front()] + " has too few invariants");
    for (std::size_t t = 0; t < o.size(); ++t) orbit_of_gen.push_back(oi);
    forms.insert(forms.end(), rows.begin(), rows.end());
  }

  const std::size_t m = images.size();
  if (!opt.names.empty() && opt.names.size() != m)
    throw ValidationError("expected " + std::to_string(m) + " names for the invariant generators");
  std::size_t first = 0;
  for (std::size_t oi = 0; oi < orbits.size(); ++oi) {
    const auto& o = orbits[oi];
    std::vector<std::vector<Scalar>> c(forms.begin() + static_cast<std::ptrdiff_t>(first),
                                       forms.begin() + static_cast<std::ptrdiff_t>(first + o.size()));
    const auto d = detail::invert(c);
    for (std::size_t t = 0; t < o.size(); ++t) {
      Polynomial y(m);
      for (std::size_t r = 0; r < o.size(); ++r)
        if (!d[t][r].is_zero()) y += d[t][r] * Polynomial::variable(m, first + r);
      back[o[t]] = y;
      const std::string base = p.names[o.front()];
      if (opt.names.empty())
        out.names.push_back(o.size() == 1 ? base : base + "_" + std::to_string(t));
      else
        out.names.push_back(opt.names[first + t]);
      out.degrees.push_back(coinv.group.reduce(coinv.projection.apply(p.degrees[o.front()])));
    }
    first += o.size();
  }

  // Relations: rational substitutions are kept as they are, even when linearly
  // dependent; the others are made rational by averaging b*f over the group.
  std::vector<GaloisElement> field_only;
  for (const GaloisElement& g : elems) {
    GaloisElement f = identity_element(m, out.group);
    f.field_mask = g.field_mask;
    field_only.push_back(f);
  }
  EchelonBasis<Scalar> rel_span;
  std::map<Exponent, std::size_t> mono;
  for (const Polynomial& f : p.relations) {
    const Polynomial h = f.substitute(back);
    if (h.is_zero()) continue;
    if (h.is_rational()) {
      rel_span.insert(detail::monomial_row(h, mono));
      out.relations.push_back(h);
      continue;
    }
    for (const Scalar& b : basis) {
      const Polynomial q = detail::reynolds(field_only, b * h);
      if (q.is_zero() || !rel_span.insert(detail::monomial_row(q, mono))) continue;
      if (!q.is_rational()) throw Error("internal: averaged relation is not rational");
      out.relations.push_back(q);
    }
  }
  out.validate();

  DescentResult res{out, images, coinv.projection};
  if (!opt.minimize) return res;

  PullbackResult self{out, out, {}, GroupHom::identity(out.group), opt.degree_bound};
  for (std::size_t i = 0; i < m; ++i) self.images.push_back(out.var(i));
  const PullbackResult mini = minimize_generators(self);
  res.presentation = mini.presentation;
  res.images.clear();
  for (const std::string& name : mini.presentation.names) res.images.push_back(images[*out.index_of(name)]);
  return res;
}

/// Descent of a pulled-back algebra under an action given on its ambient ring.
/// Images are returned in the ambient variables.
inline DescentResult descend(const PullbackResult& pr, const SemilinearAction& a, const DescentOptions& opt = {}) {
  const SemilinearAction ia = induced_action(pr, a);
  DescentOptions o = opt;
  if (o.degree_bound < pr.degree_bound_used) o.degree_bound = pr.degree_bound_used;
  DescentResult d = invariant_ring(pr.presentation, ia, o);
  for (Polynomial& f : d.images) f = f.substitute(pr.images);
  return d;
}

/// p with its degrees pushed forward along proj.
inline GradedPresentation regrade(const GradedPresentation& p, const GroupHom& proj) {
  GradedPresentation q = p;
  q.group = proj.codomain();
  for (IntVector& d : q.degrees) d = q.group.reduce(proj.apply(d));
  return q;
}

// ---- cocycles ---------------------------------------------------------------

/// For each group generator g, the diagonal automorphism sigma_g given by its
/// values on the coordinate basis of the grading group.
struct Cocycle {
  std::vector<std::vector<Scalar>> values;
};

/// chi(m) for a character given by its values on the coordinate basis.
inline Scalar evaluate_character(const std::vector<Scalar>& chi, const AbelianGroup& g, const IntVector& m) {
  const IntVector r = g.reduce(m);
  Scalar out(1);
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] == 0) continue;
    const Scalar base = r[k] > 0 ? chi.at(k) : chi.at(k).inverse();
    const Integer e = abs(r[k]);
    for (Integer t = 0; t < e; ++t) out *= base;
  }
  return out;
}

namespace detail {

// (g sigma)(m) = g(sigma(g^-1 m)).
inline std::vector<Scalar> act_on_character(const GaloisElement& g, const GroupHom& g_inverse,
                                            const std::vector<Scalar>& chi, const AbelianGroup& m) {
  std::vector<Scalar> out;
  for (std::size_t k = 0; k < m.num_coords(); ++k) {
    IntVector e = m.zero();
    e[k] = 1;
    out.push_back(evaluate_character(chi, m, g_inverse.apply(e)).conjugate_mask(g.field_mask));
  }
  return out;
}

inline std::vector<Scalar> multiply(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  std::vector<Scalar> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

inline GroupHom power(const GroupHom& a, int k) {
  GroupHom r = GroupHom::identity(a.domain());
  for (int i = 0; i < k; ++i) r = a.compose(r);
  return r;
}

}  // namespace detail

/// Checks sigma_{gh} = sigma_g * g(sigma_h) on the group presented by the
/// generators, their orders and commutation.  Returns a description of the
/// first failure.
inline std::optional<std::string> cocycle_violation(const AbelianGroup& m, const SemilinearAction& a,
                                                    const Cocycle& s) {
  const std::size_t ng = a.generators.size();
  if (s.values.size() != ng) return "expected one character per group generator";
  for (const auto& chi : s.values) {
    if (chi.size() != m.num_coords()) return "character has the wrong number of values";
    for (const Scalar& v : chi)
      if (v.is_zero()) return "character takes the value 0";
  }
  for (std::size_t k = m.free_rank(); k < m.num_coords(); ++k)
    for (std::size_t j = 0; j < ng; ++j) {
      const Integer t = m.modulus(k);
      Scalar p(1);
      for (Integer i = 0; i < t; ++i) p *= s.values[j][k];
      if (!p.is_one()) return "character is not trivial on the torsion relation of coordinate " + std::to_string(k);
    }
  const std::size_t n = a.generators.empty() ? 0 : a.generators.front().perm.size();
  std::vector<GaloisElement> gens;
  std::vector<GroupHom> inverses;
  for (std::size_t j = 0; j < ng; ++j) {
    gens.push_back(as_element(a.generators[j], 0, 1));
    inverses.push_back(detail::power(a.generators[j].grading, a.generators[j].order - 1));
  }
  // sigma of a word w_1 w_2 ... w_r, built right to left.
  auto sigma_of = [&](const std::vector<std::size_t>& word) {
    std::vector<Scalar> chi(m.num_coords(), Scalar(1));
    for (std::size_t t = word.size(); t-- > 0;) {
      const std::size_t j = word[t];
      chi = detail::multiply(s.values[j], detail::act_on_character(gens[j], inverses[j], chi, m));
    }
    return chi;
  };
  const std::vector<Scalar> ones(m.num_coords(), Scalar(1));
  for (std::size_t j = 0; j < ng; ++j) {
    const std::vector<std::size_t> word(static_cast<std::size_t>(a.generators[j].order), j);
    if (sigma_of(word) != ones) return "sigma is not trivial on generator " + std::to_string(j + 1) + " to its order";
    for (std::size_t k = j + 1; k < ng; ++k)
      if (sigma_of({j, k}) != sigma_of({k, j}))
        return "sigma does not respect commutation of generators " + std::to_string(j + 1) + " and " +
               std::to_string(k + 1);
  }
  (void)n;
  return std::nullopt;
}

/// The action composed with the diagonal automorphisms sigma_g: multiplier i of
/// g is scaled by sigma_g at the degree of the image variable.
inline SemilinearAction twist_action(const GradedPresentation& r, const SemilinearAction& a, const Cocycle& s) {
  if (auto v = cocycle_violation(r.group, a, s)) throw ValidationError("cocycle condition violated: " + *v);
  SemilinearAction out = a;
  for (std::size_t j = 0; j < a.generators.size(); ++j) {
    GaloisGenerator& g = out.generators[j];
    for (std::size_t i = 0; i < g.perm.size(); ++i)
      g.multipliers[i] *= evaluate_character(s.values[j], r.group, r.degrees[g.perm[i]]);
  }
  return out;
}

inline Cocycle inverse_cocycle(const Cocycle& s) {
  Cocycle out = s;
  for (auto& chi : out.values)
    for (Scalar& v : chi) v = v.inverse();
  return out;
}

/// Characters of M given by their values on the generator degrees of r.  The
/// expressions of the basis vectors in the degrees are computed once.
class CharacterSolver {
 public:
  explicit CharacterSolver(const GradedPresentation& r) : group_(r.group), degrees_(r.degrees) {
    for (std::size_t k = 0; k < group_.num_coords(); ++k) {
      IntVector e = group_.zero();
      e[k] = 1;
      auto c = subgroup_membership(group_, degrees_, e);
      if (!c) throw ValidationError("generator degrees do not generate the grading group");
      coords_.push_back(std::move(*c));
    }
  }

  /// The character, or nullopt when the values are not multiplicative.
  std::optional<std::vector<Scalar>> operator()(const std::vector<Scalar>& values) const {
    if (values.size() != degrees_.size()) throw ValidationError("expected one value per generator");
    std::vector<Scalar> chi;
    for (const IntVector& c : coords_) {
      Scalar v(1);
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        const Scalar base = c[i] > 0 ? values[i] : values[i].inverse();
        for (Integer t = 0; t < abs(c[i]); ++t) v *= base;
      }
      chi.push_back(v);
    }
    for (std::size_t i = 0; i < degrees_.size(); ++i)
      if (evaluate_character(chi, group_, degrees_[i]) != values[i]) return std::nullopt;
    return chi;
  }

 private:
  AbelianGroup group_;
  std::vector<IntVector> degrees_;
  std::vector<IntVector> coords_;
};

/// Cocycle on Gal(Q(i)/Q) for the Chatelet ring (variables L0+, L0-, ..., L4+,
/// L4-) with n_{i,j} = n_i / n_j: sigma(L0+) = a + ib, sigma(L0-) = (a - ib)^-1,
/// sigma(Lj+) = 1/n_j, sigma(Lj-) = n_j where a^2 + b^2 = n_1 n_2 n_3 n_4.
inline std::optional<Cocycle> cocycle_from_n(const std::array<Rational, 4>& n, const GradedPresentation& r,
                                             const CharacterSolver& solver) {
  for (const Rational& x : n)
    if (x == 0) throw ValidationError("n_i must be nonzero");
  if (r.num_variables() != 10 || r.field->depth() != 1) throw ValidationError("expected the Chatelet ring over Q(i)");
  const auto w = sum_of_two_squares(n[0] * n[1] * n[2] * n[3]);
  if (!w) return std::nullopt;
  const Scalar i = TowerElement::root(r.field, 1);
  std::vector<Scalar> values;
  values.push_back(Scalar(w->first) + Scalar(w->second) * i);
  values.push_back((Scalar(w->first) - Scalar(w->second) * i).inverse());
  for (const Rational& x : n) {
    values.push_back(Scalar(1 / x));
    values.push_back(Scalar(x));
  }
  const auto chi = solver(values);
  if (!chi) return std::nullopt;
  return Cocycle{{*chi}};
}

inline std::optional<Cocycle> cocycle_from_n(const std::array<Rational, 4>& n, const GradedPresentation& r) {
  return cocycle_from_n(n, r, CharacterSolver(r));
}

/// n_{i,j} = sigma_c([Lj+ - Li+]) for 1-based i, j.
inline Scalar chatelet_n(const Cocycle& s, const GradedPresentation& r, int i, int j) {
  return evaluate_character(s.values.at(0), r.group,
                            r.group.sub(r.degrees.at(static_cast<std::size_t>(2 * j)),
                                        r.degrees.at(static_cast<std::size_t>(2 * i))));
}

// ---- comparison -------------------------------------------------------------

/// Nonzero rationals c_i and lambda with p(c_1 x_1, ..., c_n x_n) = lambda q,
/// or nullopt.  Returns the c_i.  Both polynomials must be rational.
inline std::optional<std::vector<Rational>> scaling_to(const Polynomial& p, const Polynomial& q) {
  if (p.num_variables() != q.num_variables() || !p.is_rational() || !q.is_rational()) return std::nullopt;
  if (p.size() != q.size()) return std::nullopt;
  const std::size_t n = p.num_variables();
  std::vector<Exponent> exps;
  std::vector<Rational> ratio;
  for (const auto& [e, c] : p.terms()) {
    const Scalar d = q.coefficient(e);
    if (d.is_zero()) return std::nullopt;
    exps.push_back(e);
    ratio.push_back(d.rational() / c.rational());
  }
  const std::size_t t = exps.size();
  if (t == 0) return std::vector<Rational>(n, Rational(1));
  // Columns: one per variable and one for lambda^-1; rows: terms.
  std::vector<IntVector> cols(n + 1, IntVector(t));
  for (std::size_t k = 0; k < t; ++k) {
    for (std::size_t i = 0; i < n; ++i) cols[i][k] = exps[k][i];
    cols[n][k] = -1;
  }
  std::set<Integer> primes;
  for (const Rational& r : ratio)
    for (const Integer& z : {Integer(abs(r.get_num())), Integer(r.get_den())})
      for (const auto& [pr, e] : detail::factor(z)) primes.insert(pr);
  std::vector<Rational> c(n, Rational(1));
  for (const Integer& pr : primes) {
    IntVector rhs(t);
    for (std::size_t k = 0; k < t; ++k) {
      Integer num = abs(ratio[k].get_num()), den = ratio[k].get_den();
      while (num != 0 && divides(pr, num)) {
        num /= pr;
        ++rhs[k];
      }
      while (divides(pr, den)) {
        den /= pr;
        --rhs[k];
      }
    }
    const auto sol = subgroup_membership(AbelianGroup::free(t), cols, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
      Rational f(1);
      const Integer e = abs((*sol)[i]);
      for (Integer s = 0; s < e; ++s) f *= Rational(pr);
      c[i] *= (*sol)[i] >= 0 ? f : 1 / f;
    }
  }
  {
    IntVector rhs(t);
    for (std::size_t k = 0; k < t; ++k) rhs[k] = ratio[k] < 0 ? 1 : 0;
    const auto sol = subgroup_membership(AbelianGroup(0, IntVector(t, Integer(2))), cols, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
      if (mod_nonneg((*sol)[i], 2) == 1) c[i] = -c[i];
  }
  std::vector<Polynomial> sub;
  for (std::size_t i = 0; i < n; ++i) sub.push_back(Scalar(c[i]) * Polynomial::variable(n, i));
  const Polynomial ps = p.substitute(sub);
  const Scalar lambda = ps.leading_coefficient() / q.leading_coefficient();
  if (ps != lambda * q) return std::nullopt;
  return c;
}

}  // namespace coxring
