#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coxring/abgroup.hpp"
#include "coxring/lattice.hpp"
#include "coxring/linalg.hpp"
#include "coxring/parallel.hpp"
#include "coxring/polynomial.hpp"

namespace coxring {

/// R = F[x_1..x_n] / (relations), graded by `group` with deg x_i = degrees[i].
struct GradedPresentation {
  AbelianGroup group;
  std::vector<std::string> names;
  std::vector<IntVector> degrees;
  std::vector<Polynomial> relations;
  TowerPtr field = rationals();

  std::size_t num_variables() const noexcept { return names.size(); }

  GroupHom grading() const {
    return GroupHom(AbelianGroup::free(names.size()), group, IntMatrix::from_columns(degrees, group.num_coords()));
  }

  IntVector degree(const Exponent& e) const {
    IntVector d = group.zero();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0)
        for (std::size_t k = 0; k < d.size(); ++k) d[k] += degrees[i][k] * e[i];
    return group.reduce(std::move(d));
  }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    return std::nullopt;
  }

  Polynomial var(std::size_t i) const { return Polynomial::variable(names.size(), i); }
  Polynomial var(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw ValidationError("unknown variable " + name);
    return var(*i);
  }

  /// Checks shapes, unique names and homogeneity of every relation.
  inline void validate() const;
};

/// The common degree of all terms of f, or nullopt if f mixes degrees.  The
/// zero polynomial is reported as degree 0.
inline std::optional<IntVector> homogeneous_degree(const GradedPresentation& r, const Polynomial& f) {
  if (f.num_variables() != r.num_variables()) throw ValidationError("polynomial is over a different ring");
  std::optional<IntVector> deg;
  for (const auto& [e, c] : f.terms()) {
    IntVector d = r.degree(e);
    if (!deg) {
      deg = std::move(d);
    } else if (*deg != d) {
      return std::nullopt;
    }
  }
  if (!deg) return r.group.zero();
  return deg;
}

inline std::string degree_string(const IntVector& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + d[i].get_str();
  return s + ")";
}

inline void GradedPresentation::validate() const {
  if (degrees.size() != names.size()) throw ValidationError("every variable needs exactly one degree");
  std::set<std::string> seen;
  for (const std::string& n : names)
    if (!seen.insert(n).second) throw ValidationError("duplicate variable name " + n);
  for (const IntVector& d : degrees) group.check_length(d);
  for (const Polynomial& f : relations) {
    if (f.num_variables() != names.size()) throw ValidationError("relation is over a different ring");
    if (!homogeneous_degree(*this, f)) {
      std::string msg = "relation " + f.str(names) + " is not homogeneous; term degrees:";
      for (const auto& [e, c] : f.terms()) msg += " " + monomial_string(e, names) + " -> " + degree_string(degree(e));
      throw ValidationError(msg);
    }
  }
}

/// Relation multiple m * relations[relation] used in a degree piece.
struct RelationMultiple {
  std::size_t relation;
  Exponent multiplier;
  Polynomial value;
};

/// Degree-d piece of the free algebra with the span of relation multiples
/// kept in reduced echelon form.  Columns are the fiber monomials in
/// descending graded-lex order, so pivots are leading terms.
struct DegreeSpace {
  IntVector degree;
  std::vector<Exponent> monomials;
  std::map<Exponent, std::size_t> index;
  std::vector<RelationMultiple> multiples;
  EchelonBasis<Scalar> span;

  SparseRow<Scalar> row(const Polynomial& f) const {
    SparseRow<Scalar> r;
    for (const auto& [e, c] : f.terms()) {
      auto it = index.find(e);
      if (it == index.end()) throw ValidationError("polynomial has a term outside the degree piece");
      r.emplace(it->second, c);
    }
    return r;
  }

  Polynomial polynomial(const SparseRow<Scalar>& r) const {
    Polynomial p(monomials.empty() ? 0 : monomials.front().size());
    for (const auto& [c, v] : r) p.add_term(monomials.at(c), v);
    return p;
  }
};

/// Degree pieces of one presentation, computed on demand and cached.  Safe to
/// share between threads.
class PieceCache {
 public:
  explicit PieceCache(const GradedPresentation& r, std::optional<int> cap = std::nullopt)
      : r_(r), fibers_(r.grading(), cap), capped_(cap.has_value()) {
    for (const Polynomial& g : r_.relations) rel_deg_.push_back(*homogeneous_degree(r_, g));
  }

  const GradedPresentation& presentation() const noexcept { return r_; }
  const FiberEnumerator& fibers() const noexcept { return fibers_; }

  std::shared_ptr<const DegreeSpace> space(const IntVector& d) const {
    const IntVector key = r_.group.reduce(d);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    auto s = build(key);
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(key, std::move(s)).first->second;
  }

 private:
  std::shared_ptr<const DegreeSpace> build(const IntVector& d) const {
    auto s = std::make_shared<DegreeSpace>();
    s->degree = d;
    s->monomials = fibers_(d);
    std::reverse(s->monomials.begin(), s->monomials.end());
    for (std::size_t i = 0; i < s->monomials.size(); ++i) s->index.emplace(s->monomials[i], i);
    if (s->monomials.empty()) return s;
    for (std::size_t k = 0; k < r_.relations.size(); ++k) {
      const Polynomial& g = r_.relations[k];
      if (g.is_zero()) continue;
      for (const Exponent& m : fibers_(r_.group.sub(d, rel_deg_[k]))) {
        Polynomial v = g.shift(m);
        // Under a cap only multiples lying wholly inside the truncation count.
        if (capped_ && !std::all_of(v.terms().begin(), v.terms().end(),
                                    [&](const auto& t) { return s->index.count(t.first) > 0; }))
          continue;
        s->multiples.push_back({k, m, std::move(v)});
      }
    }
    for (const RelationMultiple& m : s->multiples) s->span.insert(s->row(m.value));
    return s;
  }

  const GradedPresentation& r_;
  FiberEnumerator fibers_;
  bool capped_;
  std::vector<IntVector> rel_deg_;
  mutable std::mutex mutex_;
  mutable std::map<IntVector, std::shared_ptr<const DegreeSpace>> cache_;
};

inline std::shared_ptr<const DegreeSpace> degree_space(const GradedPresentation& r, const IntVector& d,
                                                       std::optional<int> cap = std::nullopt) {
  return PieceCache(r, cap).space(d);
}

struct GradedPiece {
  std::vector<Exponent> standard_monomials;  // basis of R_d, descending graded-lex
  std::vector<Polynomial> basis;
  std::size_t dimension = 0;
};

/// Basis of R_d: fiber monomials that are not leading terms of the relation span.
inline GradedPiece graded_piece(const GradedPresentation& r, const IntVector& d, std::optional<int> cap = std::nullopt) {
  const auto s = degree_space(r, d, cap);
  GradedPiece p;
  for (std::size_t i = 0; i < s->monomials.size(); ++i) {
    if (s->span.rows().count(i)) continue;
    p.standard_monomials.push_back(s->monomials[i]);
    p.basis.push_back(Polynomial::monomial(s->monomials[i]));
  }
  p.dimension = p.basis.size();
  return p;
}

struct CertificateTerm {
  std::size_t relation;
  Exponent multiplier;
  Scalar coefficient;
};

struct MembershipResult {
  bool member = false;
  IntVector degree;
  std::vector<CertificateTerm> certificate;  // f = sum coefficient * x^multiplier * relation
};

/// Degree-local ideal membership: f in (relations) iff f lies in the span of
/// the relation multiples of its degree.
inline MembershipResult ideal_member(const GradedPresentation& r, const Polynomial& f,
                                     std::optional<int> cap = std::nullopt) {
  const auto deg = homogeneous_degree(r, f);
  if (!deg) throw ValidationError("ideal membership needs a homogeneous polynomial");
  MembershipResult out;
  out.degree = *deg;
  if (f.is_zero()) {
    out.member = true;
    return out;
  }
  const auto s = degree_space(r, *deg, cap);
  const std::size_t n = s->monomials.size();
  // Tag column n + k records the k-th multiple, so reduction yields the combination.
  EchelonBasis<Scalar> tagged;
  for (std::size_t k = 0; k < s->multiples.size(); ++k) {
    SparseRow<Scalar> row = s->row(s->multiples[k].value);
    row.emplace(n + k, Scalar(1));
    tagged.insert(row);
  }
  const SparseRow<Scalar> red = tagged.reduce(s->row(f));
  if (!red.empty() && red.begin()->first < n) return out;
  out.member = true;
  for (const auto& [c, v] : red) {
    const RelationMultiple& m = s->multiples[c - n];
    out.certificate.push_back({m.relation, m.multiplier, -v});
  }
  return out;
}

/// Expands a certificate and compares with f.
inline bool verify_certificate(const GradedPresentation& r, const Polynomial& f,
                               const std::vector<CertificateTerm>& cert) {
  Polynomial sum(r.num_variables());
  for (const CertificateTerm& t : cert) sum += t.coefficient * r.relations.at(t.relation).shift(t.multiplier);
  return sum == f;
}

/// Candidate generator of a new algebra: its name, its image in the ambient
/// presentation and its degree in the new grading group.
struct NewGenerator {
  std::string name;
  Polynomial image;
  IntVector degree;
};

struct DiscoveryOptions {
  int degree_bound = 6;
  std::optional<int> cap;  // enumeration cap for non-pointed gradings
};

/// Relations among `gens` evaluated in `ambient`, found degree by degree in the
/// new grading.  Every degree reached by a monomial of total degree at most the
/// bound is examined in full; per degree only relations not generated by
/// earlier ones are returned, taken from the reduced echelon form of the kernel.
inline std::vector<Polynomial> discover_relations(const PieceCache& ambient_pieces, const std::vector<NewGenerator>& gens,
                                                  const AbelianGroup& new_group, const DiscoveryOptions& opt = {}) {
  const GradedPresentation& ambient = ambient_pieces.presentation();
  const std::size_t k = gens.size();
  std::vector<IntVector> amb_deg(k);
  std::vector<IntVector> cols(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto d = homogeneous_degree(ambient, gens[i].image);
    if (!d) throw ValidationError("generator " + gens[i].name + " has an inhomogeneous image");
    if (gens[i].image.is_zero()) throw ValidationError("generator " + gens[i].name + " has zero image");
    amb_deg[i] = *d;
    cols[i] = new_group.reduce(gens[i].degree);
  }
  if (k == 0) return {};
  const bool monomial_images =
      std::all_of(gens.begin(), gens.end(), [](const NewGenerator& g) { return g.image.size() == 1; });
  const GroupHom new_hom(AbelianGroup::free(k), new_group, IntMatrix::from_columns(cols, new_group.num_coords()));
  const PointedCertificate cert = pointed_certificate(new_hom);
  const FiberEnumerator new_enum(new_hom, cert.pointed ? std::nullopt : std::optional<int>(opt.degree_bound));

  auto ambient_degree = [&](const Exponent& a) {
    IntVector d = ambient.group.zero();
    for (std::size_t i = 0; i < k; ++i)
      if (a[i])
        for (std::size_t j = 0; j < d.size(); ++j) d[j] += amb_deg[i][j] * a[i];
    return ambient.group.reduce(std::move(d));
  };
  auto new_fiber = [&](const IntVector& d) {
    std::vector<Exponent> pts = new_enum(d);
    if (!cert.pointed)
      pts.erase(std::remove_if(pts.begin(), pts.end(),
                               [&](const Exponent& e) { return total_degree(e) > opt.degree_bound; }),
                pts.end());
    return pts;
  };

  // Degrees reached within the bound, ordered so multiples come after their factors.
  std::set<IntVector> reached;
  {
    Exponent e(k, 0);
    auto walk = [&](auto&& self, std::size_t i, int left) -> void {
      if (i == k) {
        reached.insert(new_hom.apply(IntVector(e.begin(), e.end())));
        return;
      }
      for (int v = 0; v <= left; ++v) {
        e[i] = v;
        self(self, i + 1, left - v);
      }
      e[i] = 0;
    };
    walk(walk, 0, opt.degree_bound);
  }
  struct Task {
    Rational weight;
    IntVector degree;
    std::vector<Exponent> ys;                // descending graded-lex
    std::vector<SparseRow<Scalar>> kernel;   // over indices into ys
  };
  std::vector<Task> tasks;
  for (const IntVector& d : reached) {
    Task t;
    t.degree = d;
    t.ys = new_fiber(d);
    if (t.ys.empty()) continue;
    std::reverse(t.ys.begin(), t.ys.end());
    if (cert.pointed) {
      for (std::size_t i = 0; i < new_group.free_rank(); ++i) t.weight += cert.functional[i] * Rational(d[i]);
    } else {
      t.weight = total_degree(t.ys.back());
    }
    tasks.push_back(std::move(t));
  }
  std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.degree < b.degree;
  });

  // Kernels of the evaluation maps, independent per degree.
  parallel_for(tasks.size(), [&](std::size_t ti) {
    Task& t = tasks[ti];
    if (t.ys.size() < 2 && ambient.relations.empty()) return;
    const auto sp = ambient_pieces.space(ambient_degree(t.ys.front()));
    const std::size_t n = sp->monomials.size();
    std::vector<std::vector<Polynomial>> powers(k);
    auto evaluate = [&](const Exponent& a) {
      if (monomial_images) {
        Exponent e(ambient.num_variables(), 0);
        Scalar c(1);
        for (std::size_t i = 0; i < k; ++i) {
          if (a[i] == 0) continue;
          const auto& [ge, gc] = *gens[i].image.terms().begin();
          for (std::size_t v = 0; v < e.size(); ++v) e[v] += ge[v] * a[i];
          for (int r = 0; r < a[i]; ++r) c *= gc;
        }
        return Polynomial::monomial(std::move(e), c);
      }
      Polynomial v = Polynomial::constant(ambient.num_variables(), Scalar(1));
      for (std::size_t i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(gens[i].image);
        while (pw.size() < static_cast<std::size_t>(a[i])) pw.push_back(pw.back() * gens[i].image);
        v *= pw[static_cast<std::size_t>(a[i]) - 1];
      }
      return v;
    };
    EchelonBasis<Scalar> ker;
    for (std::size_t j = 0; j < t.ys.size(); ++j) {
      SparseRow<Scalar> row = sp->span.reduce(sp->row(evaluate(t.ys[j])));
      row.emplace(n + j, Scalar(1));
      ker.insert(row);
    }
    for (const auto& [p, row] : ker.rows())
      if (p >= n) {
        SparseRow<Scalar> kr;
        for (const auto& [c, v] : row) kr.emplace(c - n, v);
        t.kernel.push_back(std::move(kr));
      }
  });

  std::vector<Polynomial> found;
  std::vector<IntVector> found_deg;
  for (const Task& t : tasks) {
    if (t.kernel.empty()) continue;
    std::map<Exponent, std::size_t> yidx;
    for (std::size_t j = 0; j < t.ys.size(); ++j) yidx.emplace(t.ys[j], j);
    // Span of the multiples of relations already found that land in this degree.
    EchelonBasis<Scalar> known;
    auto add_multiples = [&](const Polynomial& f, const IntVector& fdeg) {
      for (const Exponent& m : new_fiber(new_group.sub(t.degree, fdeg))) {
        SparseRow<Scalar> row;
        bool inside = true;
        const Polynomial mult = f.shift(m);
        for (const auto& [e, c] : mult.terms()) {
          auto it = yidx.find(e);
          if (it == yidx.end()) {
            inside = false;
            break;
          }
          row.emplace(it->second, c);
        }
        if (inside) known.insert(row);
      }
    };
    for (std::size_t f = 0; f < found.size(); ++f) add_multiples(found[f], found_deg[f]);
    // Smallest leading monomial first; in a non-pointed grading a relation may
    // have multiples in its own degree.
    std::vector<const SparseRow<Scalar>*> rows;
    for (const SparseRow<Scalar>& row : t.kernel) rows.push_back(&row);
    std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->begin()->first > b->begin()->first; });
    for (const SparseRow<Scalar>* row : rows) {
      if (!known.insert(*row)) continue;
      Polynomial p(k);
      for (const auto& [c, v] : *row) p.add_term(t.ys[c], v);
      found.push_back(normalize_polynomial(p));
      found_deg.push_back(t.degree);
      add_multiples(found.back(), t.degree);
    }
  }
  return found;
}

inline std::vector<Polynomial> discover_relations(const GradedPresentation& ambient, const std::vector<NewGenerator>& gens,
                                                  const AbelianGroup& new_group, const DiscoveryOptions& opt = {}) {
  const PieceCache pieces(ambient, opt.cap);
  return discover_relations(pieces, gens, new_group, opt);
}

}  // namespace coxring
