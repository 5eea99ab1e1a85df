#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coxring/parallel.hpp"
#include "coxring/presentation.hpp"

namespace coxring {

// ---- irrelevant ideals ------------------------------------------------------

namespace detail {

inline Exponent support(const Exponent& e) {
  Exponent s(e.size(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) s[i] = e[i] != 0 ? 1 : 0;
  return s;
}

inline bool divides_monomial(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

}  // namespace detail

/// Minimal generators of the squarefree monomial ideal generated by the
/// supports of `monomials`, graded-lex ascending.
inline std::vector<Exponent> minimal_squarefree(const std::vector<Exponent>& monomials) {
  std::set<Exponent, GrlexLess> supports;
  for (const Exponent& e : monomials) supports.insert(detail::support(e));
  std::vector<Exponent> out;
  // Graded-lex ascending visits every divisor before its multiples.
  for (const Exponent& s : supports)
    if (std::none_of(out.begin(), out.end(), [&](const Exponent& g) { return detail::divides_monomial(g, s); }))
      out.push_back(s);
  return out;
}

/// Radical of the monomial part of <R_m>: squarefree supports of the degree-m
/// monomials, minimalized under divisibility.
inline std::vector<Exponent> irrelevant_ideal(const GradedPresentation& r, const IntVector& m,
                                              std::optional<int> cap = std::nullopt) {
  return minimal_squarefree(fiber_points(r.grading(), r.group.reduce(m), cap));
}

/// Radical of a product of monomial ideals, each given by its generators.
inline std::vector<Exponent> radical_of_product(const std::vector<std::vector<Exponent>>& factors) {
  if (factors.empty()) return {};
  std::vector<Exponent> prod = minimal_squarefree(factors.front());
  for (std::size_t k = 1; k < factors.size(); ++k) {
    std::vector<Exponent> next;
    for (const Exponent& a : prod)
      for (const Exponent& b : factors[k]) {
        Exponent c = a;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
        next.push_back(std::move(c));
      }
    prod = minimal_squarefree(next);
  }
  return prod;
}

namespace detail {

/// Minimal sets of variables meeting the support of every generator, as 0/1
/// vectors.  Their coordinate subspaces are the components of V(gens).
inline std::vector<Exponent> minimal_transversals(const std::vector<Exponent>& gens, std::size_t n) {
  if (n > 24) throw BoundExceeded("too many variables for transversal enumeration");
  std::vector<Exponent> out;
  std::vector<unsigned long> masks;
  for (const Exponent& g : gens) {
    unsigned long m = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (g[i] != 0) m |= 1ul << i;
    masks.push_back(m);
  }
  std::vector<unsigned long> subsets(1ul << n);
  for (unsigned long s = 0; s < subsets.size(); ++s) subsets[s] = s;
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](unsigned long a, unsigned long b) { return __builtin_popcountl(a) < __builtin_popcountl(b); });
  std::vector<unsigned long> found;
  for (unsigned long s : subsets) {
    if (!std::all_of(masks.begin(), masks.end(), [&](unsigned long m) { return (m & s) != 0; })) continue;
    if (std::any_of(found.begin(), found.end(), [&](unsigned long f) { return (f & s) == f; })) continue;
    found.push_back(s);
    Exponent e(n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i] = (s >> i) & 1ul ? 1 : 0;
    out.push_back(std::move(e));
  }
  return out;
}

/// Whether every monomial of `b` vanishes on V(a) inside Spec R.
inline bool vanishes_on(const GradedPresentation& r, const std::vector<Exponent>& a, const std::vector<Exponent>& b) {
  const std::size_t n = r.num_variables();
  for (const Exponent& s : minimal_transversals(a, n)) {
    // Relation restricted to the coordinate subspace x_s = 0.
    Polynomial g(n);
    if (!r.relations.empty()) {
      for (const auto& [e, c] : r.relations.front().terms()) {
        bool keep = true;
        for (std::size_t i = 0; i < n; ++i) keep = keep && !(s[i] != 0 && e[i] != 0);
        if (keep) g.add_term(e, c);
      }
    }
    // Components of the restricted locus: one hyperplane per variable of the
    // monomial content of g, plus V(g / content) unless that is a constant.
    Exponent content(n, 0);
    bool hypersurface = g.is_zero();
    if (!g.is_zero()) {
      content = g.terms().begin()->first;
      for (const auto& [e, c] : g.terms())
        for (std::size_t i = 0; i < n; ++i) content[i] = std::min(content[i], e[i]);
      hypersurface = g.size() > 1;
    }
    for (const Exponent& m : b) {
      bool zero_on_subspace = false;
      for (std::size_t i = 0; i < n; ++i) zero_on_subspace = zero_on_subspace || (s[i] != 0 && m[i] != 0);
      if (zero_on_subspace) continue;
      // V(g / content) lies in no coordinate hyperplane, so m cannot vanish on it.
      if (hypersurface) return false;
      for (std::size_t i = 0; i < n; ++i)
        if (content[i] != 0 && m[i] == 0) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Exact comparison of the radicals of two monomial ideals of R, via their
/// vanishing sets in Spec R over an algebraic closure.  R may have at most
/// one relation.
inline bool same_radical(const GradedPresentation& r, const std::vector<Exponent>& a, const std::vector<Exponent>& b) {
  if (r.relations.size() > 1) throw ValidationError("radical comparison supports at most one relation");
  return detail::vanishes_on(r, a, b) && detail::vanishes_on(r, b, a);
}

// ---- generation in degree m -------------------------------------------------

struct GenerationStep {
  int k = 0;                      // checks R_{km} * R_m -> R_{(k+1)m}
  std::size_t target_dimension = 0;
  std::size_t image_dimension = 0;
};

struct GenerationReport {
  bool generated = true;
  std::vector<GenerationStep> steps;
};

/// Bounded check that the section ring of m is generated in degree one:
/// the multiplication maps R_{km} x R_m -> R_{(k+1)m} are onto for k = 1..steps.
inline GenerationReport generated_in_degree(const GradedPresentation& r, const IntVector& m, int steps,
                                            std::optional<int> cap = std::nullopt) {
  const PieceCache pieces(r, cap);
  auto multiple = [&](int k) {
    IntVector d = m;
    for (auto& x : d) x *= k;
    return r.group.reduce(std::move(d));
  };
  const GradedPiece base = graded_piece(r, multiple(1), cap);
  GenerationReport rep;
  for (int k = 1; k <= steps; ++k) {
    const GradedPiece lower = graded_piece(r, multiple(k), cap);
    const auto target = pieces.space(multiple(k + 1));
    const std::size_t relations = target->span.rank();
    const std::size_t want = target->monomials.size() - relations;
    EchelonBasis<Scalar> image = target->span;
    for (const Exponent& a : lower.standard_monomials) {
      if (image.rank() == target->monomials.size()) break;
      for (const Exponent& b : base.standard_monomials) {
        Exponent c = a;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
        auto it = target->index.find(c);
        if (it == target->index.end()) continue;  // outside a capped fiber
        image.insert(SparseRow<Scalar>{{it->second, Scalar(1)}});
        if (image.rank() == target->monomials.size()) break;
      }
    }
    const GenerationStep step{k, want, image.rank() - relations};
    rep.steps.push_back(step);
    if (step.image_dimension != step.target_dimension) rep.generated = false;
  }
  return rep;
}

// ---- parameterization schemes ------------------------------------------------

/// gcd(x_variable, monomial) = 1 on integer points.
struct CoprimeClause {
  std::size_t variable = 0;
  Exponent monomial;
};

/// Integral model of a torsor together with its map to projective space.
struct ParamScheme {
  GradedPresentation presentation;  // over Q, integer relations
  std::vector<CoprimeClause> coprime;
  std::vector<Exponent> projection;  // monomials of one common degree
  std::vector<std::string> coordinates;
  std::vector<Polynomial> surface;  // homogeneous in the projective coordinates
  std::optional<IntVector> ample;   // degree of the irrelevant ideal; projection degree if absent

  IntVector projection_degree() const {
    if (projection.empty()) throw ValidationError("parameterization scheme has no projection");
    return presentation.degree(projection.front());
  }

  IntVector irrelevant_degree() const { return ample ? presentation.group.reduce(*ample) : projection_degree(); }

  void validate() const {
    presentation.validate();
    if (presentation.field->depth() != 0) throw ValidationError("parameterization scheme must be defined over Q");
    const std::size_t n = presentation.num_variables();
    for (const Polynomial& f : presentation.relations)
      for (const auto& [e, c] : f.terms())
        if (!c.is_rational() || !is_integer(c.rational()))
          throw ValidationError("relation " + f.str(presentation.names) + " has a non-integer coefficient");
    for (const CoprimeClause& cl : coprime)
      if (cl.variable >= n || cl.monomial.size() != n) throw ValidationError("malformed coprimality clause");
    const IntVector d = projection_degree();
    for (const Exponent& e : projection) {
      if (e.size() != n) throw ValidationError("projection monomial has wrong number of variables");
      if (!presentation.group.equal(presentation.degree(e), d))
        throw ValidationError("projection monomials have different degrees");
    }
    if (coordinates.size() != projection.size()) throw ValidationError("one coordinate name per projection monomial");
    for (const Polynomial& f : surface) {
      if (f.num_variables() != projection.size()) throw ValidationError("surface equation in wrong number of variables");
      std::optional<int> deg;
      for (const auto& [e, c] : f.terms()) {
        if (!c.is_rational() || !is_integer(c.rational()))
          throw ValidationError("surface equation has a non-integer coefficient");
        const int t = total_degree(e);
        if (deg && *deg != t) throw ValidationError("surface equation " + f.str(coordinates) + " is not homogeneous");
        deg = t;
      }
    }
  }
};

using IntTuple = std::vector<std::int64_t>;

namespace detail {

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline __int128 gcd128(__int128 a, __int128 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Integer polynomial compiled for fast evaluation at points of a box.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  CompiledPolynomial(const Polynomial& f, std::int64_t height) {
    long double worst = 0;
    for (const auto& [e, c] : f.terms()) {
      const Integer z = c.rational().get_num();
      Term t{to_int64(z), {}};
      long double size = static_cast<long double>(t.coefficient < 0 ? -t.coefficient : t.coefficient);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) {
          t.factors.push_back(i);
          size *= static_cast<long double>(height);
        }
      worst += size;
      terms_.push_back(std::move(t));
    }
    if (worst > 1e37L) throw BoundExceeded("polynomial values exceed 128 bits at this height");
  }

  __int128 operator()(const std::int64_t* x) const {
    __int128 sum = 0;
    for (const Term& t : terms_) {
      __int128 v = t.coefficient;
      for (std::size_t i : t.factors) v *= x[i];
      sum += v;
    }
    return sum;
  }

 private:
  struct Term {
    std::int64_t coefficient;
    std::vector<std::size_t> factors;
  };
  std::vector<Term> terms_;
};

inline __int128 monomial_value(const Exponent& e, const std::int64_t* x) {
  __int128 v = 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) v *= x[i];
  return v;
}

/// A variable that can be solved for: it occurs in exactly one term of one
/// relation, to the first power.
struct SolvedVariable {
  std::size_t variable;
  std::size_t relation;
  Exponent cofactor;  // the term divided by the variable
  std::int64_t coefficient;
  Polynomial rest;  // the relation without that term
};

inline std::optional<SolvedVariable> solvable_variable(const ParamScheme& ps) {
  const GradedPresentation& r = ps.presentation;
  for (std::size_t v = r.num_variables(); v-- > 0;)
    for (std::size_t k = 0; k < r.relations.size(); ++k) {
      const Polynomial& f = r.relations[k];
      std::optional<Exponent> hit;
      bool ok = true;
      for (const auto& [e, c] : f.terms()) {
        if (e[v] == 0) continue;
        if (e[v] != 1 || hit) {
          ok = false;
          break;
        }
        hit = e;
      }
      if (!ok || !hit) continue;
      SolvedVariable s{v, k, *hit, to_int64(f.coefficient(*hit).rational().get_num()), Polynomial(r.num_variables())};
      s.cofactor[v] = 0;
      for (const auto& [e, c] : f.terms())
        if (e != *hit) s.rest.add_term(e, c);
      return s;
    }
  return std::nullopt;
}

}  // namespace detail

/// Tuples in [-height, height]^n satisfying every relation exactly, every
/// coprimality clause (gcd(0, n) = |n|) and not annihilating every generator of
/// the irrelevant ideal.  Output is lexicographically sorted.
inline std::vector<IntTuple> param_enumerate(const ParamScheme& ps, std::int64_t height) {
  if (height < 1) throw ValidationError("height must be at least 1");
  ps.validate();
  const GradedPresentation& r = ps.presentation;
  const std::size_t n = r.num_variables();
  const std::vector<Exponent> irrelevant = irrelevant_ideal(r, ps.irrelevant_degree());
  std::vector<detail::CompiledPolynomial> relations;
  for (const Polynomial& f : r.relations) relations.emplace_back(f, height);
  const auto solved = detail::solvable_variable(ps);
  const detail::CompiledPolynomial rest = solved ? detail::CompiledPolynomial(solved->rest, height)
                                                 : detail::CompiledPolynomial();

  auto accept = [&](const std::int64_t* x) {
    for (const auto& f : relations)
      if (f(x) != 0) return false;
    for (const CoprimeClause& cl : ps.coprime)
      if (detail::gcd128(x[cl.variable], detail::monomial_value(cl.monomial, x)) != 1) return false;
    return std::any_of(irrelevant.begin(), irrelevant.end(),
                       [&](const Exponent& g) { return detail::monomial_value(g, x) != 0; });
  };

  // Free variables run through the box; the solved one (if any) is computed.
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i)
    if (!solved || i != solved->variable) free.push_back(i);
  const std::size_t width = static_cast<std::size_t>(2 * height + 1);
  const std::size_t outer = free.empty() ? 1 : width;

  std::vector<std::vector<IntTuple>> chunks(outer);
  parallel_for(outer, [&](std::size_t chunk) {
    IntTuple x(n, 0);
    std::vector<IntTuple>& out = chunks[chunk];
    auto emit = [&] {
      if (!solved) {
        if (accept(x.data())) out.push_back(x);
        return;
      }
      const std::size_t v = solved->variable;
      const __int128 a = static_cast<__int128>(solved->coefficient) * detail::monomial_value(solved->cofactor, x.data());
      const __int128 b = rest(x.data());
      if (a == 0) {
        if (b != 0) return;
        for (std::int64_t t = -height; t <= height; ++t) {
          x[v] = t;
          if (accept(x.data())) out.push_back(x);
        }
        return;
      }
      if (b % a != 0) return;
      const __int128 t = -b / a;
      if (t < -height || t > height) return;
      x[v] = static_cast<std::int64_t>(t);
      if (accept(x.data())) out.push_back(x);
    };
    if (free.empty()) {
      emit();
      return;
    }
    x[free[0]] = static_cast<std::int64_t>(chunk) - height;
    for (std::size_t k = 1; k < free.size(); ++k) x[free[k]] = -height;
    for (;;) {
      emit();
      std::size_t k = free.size();
      while (k > 1 && x[free[k - 1]] == height) x[free[--k]] = -height;
      if (k == 1) break;
      ++x[free[k - 1]];
    }
  });
  std::vector<IntTuple> all;
  for (auto& c : chunks) all.insert(all.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
  std::sort(all.begin(), all.end());
  return all;
}

/// Primitive representative: divided by the content, first nonzero entry positive.
inline std::vector<Integer> primitive_point(std::vector<Integer> x) {
  Integer g = 0;
  for (const Integer& v : x) g = gcd(g, v);
  if (g == 0) throw ValidationError("the zero vector is not a projective point");
  for (const Integer& v : x)
    if (v != 0) {
      if (v < 0) g = -g;
      break;
    }
  for (Integer& v : x) v /= g;
  return x;
}

inline Rational evaluate(const Polynomial& f, const std::vector<Integer>& x) {
  Rational sum = 0;
  for (const auto& [e, c] : f.terms()) {
    if (!c.is_rational()) throw ValidationError("evaluation needs rational coefficients");
    Rational t = c.rational();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    sum += t;
  }
  return sum;
}

struct ProjectedTuple {
  IntTuple tuple;
  std::vector<Integer> point;
  bool on_surface = true;
};

struct ProjectionReport {
  std::vector<ProjectedTuple> entries;
  std::vector<std::vector<Integer>> points;  // distinct, sorted
  std::size_t violations = 0;
};

/// Projects each tuple, normalizes to a primitive point and checks every
/// surface equation exactly.
inline ProjectionReport param_project_and_verify(const ParamScheme& ps, const std::vector<IntTuple>& tuples) {
  ProjectionReport rep;
  std::set<std::vector<Integer>> distinct;
  for (const IntTuple& t : tuples) {
    if (t.size() != ps.presentation.num_variables()) throw ValidationError("tuple has wrong length");
    std::vector<Integer> y;
    bool nonzero = false;
    for (const Exponent& e : ps.projection) {
      Integer v = 1;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) v *= Integer(static_cast<long>(t[i]));
      nonzero = nonzero || v != 0;
      y.push_back(std::move(v));
    }
    if (!nonzero) throw ValidationError("tuple projects to the zero vector; irrelevant locus was not filtered");
    ProjectedTuple pt{t, primitive_point(std::move(y)), true};
    for (const Polynomial& f : ps.surface)
      if (evaluate(f, pt.point) != 0) pt.on_surface = false;
    if (!pt.on_surface) ++rep.violations;
    distinct.insert(pt.point);
    rep.entries.push_back(std::move(pt));
  }
  rep.points.assign(distinct.begin(), distinct.end());
  return rep;
}

/// Primitive integer points of the surface with coordinates in [-height, height].
inline std::vector<std::vector<Integer>> surface_points(const ParamScheme& ps, std::int64_t height) {
  const std::size_t n = ps.projection.size();
  std::vector<detail::CompiledPolynomial> eqs;
  for (const Polynomial& f : ps.surface) eqs.emplace_back(f, height);
  std::vector<std::vector<Integer>> out;
  IntTuple x(n, -height);
  if (n == 0) return out;
  for (;;) {
    std::int64_t g = 0;
    for (std::int64_t v : x) g = detail::gcd64(g, v);
    const auto first = std::find_if(x.begin(), x.end(), [](std::int64_t v) { return v != 0; });
    if (g == 1 && *first > 0 &&
        std::all_of(eqs.begin(), eqs.end(), [&](const auto& f) { return f(x.data()) == 0; })) {
      std::vector<Integer> p;
      for (std::int64_t v : x) p.emplace_back(static_cast<long>(v));
      out.push_back(std::move(p));
    }
    std::size_t k = n;
    while (k > 0 && x[k - 1] == height) x[--k] = -height;
    if (k == 0) break;
    ++x[k - 1];
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CoverageReport {
  std::vector<std::vector<Integer>> surface;    // primitive points of bounded height
  std::vector<std::vector<Integer>> uncovered;  // not reached by any parameter tuple
  std::int64_t parameter_height = 0;             // smallest height reaching all, or the maximum tried
  bool covered() const { return uncovered.empty(); }
};

/// Checks that every surface point of height at most `surface_height` is the
/// image of a parameter tuple of height at most `max_parameter_height`
/// (default 4 * surface_height), raising the parameter height step by step.
inline CoverageReport coverage_check(const ParamScheme& ps, std::int64_t surface_height,
                                     std::int64_t max_parameter_height = 0) {
  if (max_parameter_height <= 0) max_parameter_height = 4 * surface_height;
  CoverageReport rep;
  rep.surface = surface_points(ps, surface_height);
  std::set<std::vector<Integer>> missing(rep.surface.begin(), rep.surface.end());
  for (std::int64_t h = 1; h <= max_parameter_height && !missing.empty(); ++h) {
    rep.parameter_height = h;
    for (const auto& p : param_project_and_verify(ps, param_enumerate(ps, h)).points) missing.erase(p);
  }
  rep.uncovered.assign(missing.begin(), missing.end());
  return rep;
}

}  // namespace coxring
