#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxring/abgroup.hpp"
#include "coxring/lattice.hpp"
#include "coxring/presentation.hpp"

namespace coxring {

/// A graded algebra given by generators inside an ambient presentation.
/// Generator i of `presentation` maps to images[i], which is homogeneous of
/// degree to_ambient(presentation.degrees[i]).
struct PullbackResult {
  GradedPresentation ambient;
  GradedPresentation presentation;
  std::vector<Polynomial> images;
  GroupHom to_ambient;
  int degree_bound_used = 0;

  std::vector<NewGenerator> generators() const {
    std::vector<NewGenerator> g;
    for (std::size_t i = 0; i < images.size(); ++i)
      g.push_back({presentation.names[i], images[i], presentation.degrees[i]});
    return g;
  }
};

struct PullbackOptions {
  int degree_bound = 6;
  std::optional<int> cap;               // enumeration cap for non-pointed gradings
  int hilbert_cap = 64;                 // total-degree cap of the Hilbert basis completion
  std::vector<std::string> names;       // overrides generated generator names
};

/// Assembles a PullbackResult from generators, discovering their relations.
inline PullbackResult make_pullback(const GradedPresentation& ambient, std::vector<NewGenerator> gens,
                                    const AbelianGroup& group, const GroupHom& to_ambient, const PullbackOptions& opt) {
  PullbackResult pr{ambient, {}, {}, to_ambient, opt.degree_bound};
  pr.presentation.group = group;
  pr.presentation.field = ambient.field;
  for (NewGenerator& g : gens) {
    g.degree = group.reduce(g.degree);
    const auto d = homogeneous_degree(ambient, g.image);
    if (!d || !ambient.group.equal(*d, to_ambient.apply(g.degree)))
      throw ValidationError("generator " + g.name + " is not homogeneous of its declared degree");
    pr.presentation.names.push_back(g.name);
    pr.presentation.degrees.push_back(g.degree);
    pr.images.push_back(g.image);
  }
  pr.presentation.relations = discover_relations(ambient, gens, group, {opt.degree_bound, opt.cap});
  pr.presentation.validate();
  return pr;
}

/// R viewed as generated by its own variables.
inline PullbackResult identity_pullback(const GradedPresentation& r, int degree_bound = 6) {
  PullbackResult pr{r, r, {}, GroupHom::identity(r.group), degree_bound};
  for (std::size_t i = 0; i < r.num_variables(); ++i) pr.images.push_back(r.var(i));
  return pr;
}

namespace detail {

inline std::string monomial_name(const Exponent& e, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) s += (s.empty() ? "" : "_") + names[i];
  return s.empty() ? "one" : s;
}

// Subgroup generated by h as an abstract group; when h is independent its own
// elements are the basis, so degrees read as coefficients on h.
inline KernelResult subgroup_with_basis(const AbelianGroup& g, const std::vector<IntVector>& h) {
  const GroupHom f(AbelianGroup::free(h.size()), g, IntMatrix::from_columns(h, g.num_coords()));
  if (hom_kernel(f).group.num_coords() == 0) return {f.domain(), f};
  return subgroup_presentation(g, h);
}

inline IntVector coordinates_in(const KernelResult& sub, const IntVector& x) {
  const auto c = subgroup_membership(sub.inclusion.codomain(), hom_image_generators(sub.inclusion), x);
  if (!c) throw ValidationError("degree " + degree_string(x) + " is not in the subgroup");
  return sub.group.reduce(*c);
}

}  // namespace detail

/// Generators ordered by ascending total degree, ties lexicographically
/// descending, so that single variables keep their order.
inline void sort_generator_exponents(std::vector<Exponent>& basis) {
  std::stable_sort(basis.begin(), basis.end(), [](const Exponent& a, const Exponent& b) {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a > b;
  });
}

/// The subalgebra of R made of the pieces whose degree lies in <H>, graded by
/// <H>.  Generators are the Hilbert-basis monomials of the fiber monoid.
inline PullbackResult veronese_subalgebra(const GradedPresentation& r, const std::vector<IntVector>& h,
                                          const PullbackOptions& opt = {}) {
  r.validate();
  const FiberMonoid fm{r.grading(), h};
  std::vector<Exponent> basis = hilbert_basis(fm, opt.hilbert_cap);
  sort_generator_exponents(basis);
  const KernelResult sub = detail::subgroup_with_basis(r.group, h);
  if (!opt.names.empty() && opt.names.size() != basis.size())
    throw ValidationError("expected " + std::to_string(basis.size()) + " generator names");

  std::vector<NewGenerator> gens;
  bool identity = basis.size() == r.num_variables();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Exponent& e = basis[k];
    if (total_degree(e) != 1 || e[k] != 1) identity = false;
    const std::string name = opt.names.empty() ? detail::monomial_name(e, r.names) : opt.names[k];
    gens.push_back({name, Polynomial::monomial(e), detail::coordinates_in(sub, r.degree(e))});
  }
  if (!identity) return make_pullback(r, std::move(gens), sub.group, sub.inclusion, opt);

  // Every variable survives: R itself, regraded by <H>.
  PullbackResult pr{r, {}, {}, sub.inclusion, opt.degree_bound};
  pr.presentation.group = sub.group;
  pr.presentation.field = r.field;
  for (NewGenerator& g : gens) {
    pr.presentation.names.push_back(g.name);
    pr.presentation.degrees.push_back(g.degree);
    pr.images.push_back(g.image);
  }
  for (const Polynomial& f : r.relations) pr.presentation.relations.push_back(normalize_polynomial(f));
  pr.presentation.validate();
  return pr;
}

/// Pullback of R along phi: M' -> G.  Factors through the image: generators
/// t_i lift the Veronese generators of im(phi) to M', generators u_j of image 1
/// carry the degrees of a monoid generating set of ker(phi).
inline PullbackResult pullback_general(const GradedPresentation& r, const GroupHom& phi, const PullbackOptions& opt = {}) {
  if (!(phi.codomain() == r.group)) throw ValidationError("pullback morphism must land in the grading group");
  const AbelianGroup& m = phi.domain();
  const std::vector<IntVector> image = hom_image_generators(phi);
  const PullbackResult ver = veronese_subalgebra(r, image, opt);
  const KernelResult sub = detail::subgroup_with_basis(r.group, image);

  // psi: M' -> <image>, columns in the coordinates of the Veronese grading.
  std::vector<IntVector> psi_cols;
  for (const IntVector& c : image) psi_cols.push_back(detail::coordinates_in(sub, c));
  if (!(sub.group == ver.presentation.group)) throw Error("internal: Veronese grading group mismatch");

  std::vector<NewGenerator> gens;
  for (std::size_t i = 0; i < ver.images.size(); ++i) {
    const auto lift = subgroup_membership(sub.group, psi_cols, ver.presentation.degrees[i]);
    if (!lift) throw Error("internal: Veronese degree has no preimage");
    gens.push_back({ver.presentation.names[i], ver.images[i], m.reduce(*lift)});
  }
  const KernelResult ker = hom_kernel(phi);
  const std::vector<IntVector> kcols = hom_image_generators(ker.inclusion);
  const Polynomial one = Polynomial::constant(r.num_variables(), Scalar(1));
  IntVector neg_sum = m.zero();
  std::size_t u = 0;
  for (std::size_t j = 0; j < kcols.size(); ++j) {
    gens.push_back({"u" + std::to_string(++u), one, kcols[j]});
    if (j < ker.group.free_rank()) neg_sum = m.sub(neg_sum, kcols[j]);
  }
  if (ker.group.free_rank() > 0) gens.push_back({"u" + std::to_string(++u), one, neg_sum});

  PullbackOptions o = opt;
  if (!o.cap && ker.group.free_rank() > 0) o.cap = opt.degree_bound;
  return make_pullback(r, std::move(gens), m, phi, o);
}

namespace detail {

// Is generator g congruent, modulo the relations of pr, to a polynomial in the
// other generators?  Decided in the degree of g by projecting the relation
// span onto the monomials that involve g.
inline bool generator_redundant(const PieceCache& pieces, std::size_t g) {
  const GradedPresentation& p = pieces.presentation();
  const auto sp = pieces.space(p.degrees[g]);
  Exponent eg(p.num_variables(), 0);
  eg[g] = 1;
  EchelonBasis<Scalar> proj;
  for (const RelationMultiple& mult : sp->multiples) {
    SparseRow<Scalar> row;
    for (const auto& [e, c] : mult.value.terms())
      if (e[g] > 0) row.emplace(sp->index.at(e), c);
    proj.insert(row);
  }
  auto it = sp->index.find(eg);
  if (it == sp->index.end()) return false;
  return proj.contains(SparseRow<Scalar>{{it->second, Scalar(1)}});
}

}  // namespace detail

/// Drops generators that are polynomials in the others (modulo relations, up to
/// the recorded degree bound), one at a time, rediscovering relations after
/// each removal.  Candidates are tried largest image degree first.
inline PullbackResult minimize_generators(const PullbackResult& pr) {
  PullbackResult cur = pr;
  PullbackOptions opt;
  opt.degree_bound = pr.degree_bound_used;
  if (!is_pointed(cur.presentation.grading())) opt.cap = pr.degree_bound_used;
  for (;;) {
    const std::size_t n = cur.images.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const int da = cur.images[a].total_degree(), db = cur.images[b].total_degree();
      if (da != db) return da > db;
      return grlex_less(cur.images[b].leading_exponent(), cur.images[a].leading_exponent());
    });
    const PieceCache pieces(cur.presentation, opt.cap);
    std::optional<std::size_t> drop;
    for (std::size_t g : order)
      if (detail::generator_redundant(pieces, g)) {
        drop = g;
        break;
      }
    if (!drop) return cur;
    std::vector<NewGenerator> gens = cur.generators();
    gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(*drop));
    cur = make_pullback(cur.ambient, std::move(gens), cur.presentation.group, cur.to_ambient, opt);
  }
}

}  // namespace coxring
