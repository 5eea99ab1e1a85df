#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "coxring/integer.hpp"
#include "coxring/matrix.hpp"

namespace coxring {

/// Finitely generated abelian group Z^r + Z/t_1 + ... + Z/t_k.  Coordinates of
/// an element list the free part first, then one coordinate per torsion factor.
/// Torsion orders are kept as given, not forced into divisor-chain form.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::size_t free_rank, IntVector torsion_orders = {})
      : free_rank_(free_rank), torsion_(std::move(torsion_orders)) {
    for (const Integer& t : torsion_)
      if (t < 2) throw ValidationError("torsion orders must be >= 2, got " + t.get_str());
  }

  static AbelianGroup free(std::size_t rank) { return AbelianGroup(rank); }

  std::size_t free_rank() const noexcept { return free_rank_; }
  const IntVector& torsion_orders() const noexcept { return torsion_; }
  std::size_t num_coords() const noexcept { return free_rank_ + torsion_.size(); }
  bool is_free() const noexcept { return torsion_.empty(); }

  /// Modulus of coordinate i (0 for free coordinates).
  Integer modulus(std::size_t i) const { return i < free_rank_ ? Integer(0) : torsion_[i - free_rank_]; }

  IntVector reduce(IntVector coords) const {
    check_length(coords);
    for (std::size_t i = free_rank_; i < coords.size(); ++i) coords[i] = mod_nonneg(coords[i], modulus(i));
    return coords;
  }

  IntVector zero() const { return IntVector(num_coords()); }

  bool is_zero(const IntVector& coords) const {
    const IntVector r = reduce(coords);
    for (const Integer& z : r)
      if (z != 0) return false;
    return true;
  }

  bool equal(const IntVector& a, const IntVector& b) const { return reduce(a) == reduce(b); }

  IntVector add(const IntVector& a, const IntVector& b) const {
    check_length(a);
    check_length(b);
    IntVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return reduce(std::move(c));
  }

  IntVector scale(const IntVector& a, const Integer& k) const {
    IntVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * k;
    return reduce(std::move(c));
  }

  IntVector sub(const IntVector& a, const IntVector& b) const { return add(a, scale(b, -1)); }

  void check_length(const IntVector& coords) const {
    if (coords.size() != num_coords())
      throw ValidationError("element has " + std::to_string(coords.size()) + " coordinates, group " + str() +
                            " expects " + std::to_string(num_coords()));
  }

  std::string str() const {
    std::string s = "Z^" + std::to_string(free_rank_);
    for (const Integer& t : torsion_) s += " + Z/" + t.get_str();
    return s;
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

 private:
  std::size_t free_rank_ = 0;
  IntVector torsion_;
};

/// Element of an AbelianGroup; coordinates are always stored reduced.
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(AbelianGroup parent, IntVector coords)
      : parent_(std::move(parent)), coords_(parent_.reduce(std::move(coords))) {}

  const AbelianGroup& parent() const noexcept { return parent_; }
  const IntVector& coords() const noexcept { return coords_; }
  bool is_zero() const { return parent_.is_zero(coords_); }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.parent_ == b.parent_ && a.coords_ == b.coords_;
  }
  friend GroupElement operator+(const GroupElement& a, const GroupElement& b) {
    require_same(a, b);
    return GroupElement(a.parent_, a.parent_.add(a.coords_, b.coords_));
  }
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b) {
    require_same(a, b);
    return GroupElement(a.parent_, a.parent_.sub(a.coords_, b.coords_));
  }
  friend std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
    os << '(';
    for (std::size_t i = 0; i < g.coords_.size(); ++i) os << (i ? "," : "") << g.coords_[i];
    return os << ')';
  }

 private:
  static void require_same(const GroupElement& a, const GroupElement& b) {
    if (!(a.parent_ == b.parent_)) throw ValidationError("group elements have different parents");
  }

  AbelianGroup parent_;
  IntVector coords_;
};

/// Homomorphism given by an integer matrix whose columns are the images of the
/// domain generators.
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(AbelianGroup domain, AbelianGroup codomain, IntMatrix matrix)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.num_coords() || matrix_.cols() != domain_.num_coords())
      throw ValidationError("hom matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                            ", expected " + std::to_string(codomain_.num_coords()) + "x" +
                            std::to_string(domain_.num_coords()));
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
      IntVector col = codomain_.reduce(matrix_.column(j));
      for (std::size_t i = 0; i < col.size(); ++i) matrix_(i, j) = col[i];
      const Integer order = domain_.modulus(j);
      if (order != 0 && !codomain_.is_zero(codomain_.scale(col, order)))
        throw ValidationError("torsion generator " + std::to_string(j) + " of order " + order.get_str() +
                              " is not mapped to an element killed by that order");
    }
  }

  static GroupHom identity(const AbelianGroup& g) { return GroupHom(g, g, IntMatrix::identity(g.num_coords())); }

  const AbelianGroup& domain() const noexcept { return domain_; }
  const AbelianGroup& codomain() const noexcept { return codomain_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  IntVector apply(const IntVector& x) const {
    domain_.check_length(x);
    return codomain_.reduce(matrix_ * x);
  }
  GroupElement operator()(const GroupElement& x) const { return GroupElement(codomain_, apply(x.coords())); }

  bool is_zero() const {
    for (std::size_t j = 0; j < matrix_.cols(); ++j)
      if (!codomain_.is_zero(matrix_.column(j))) return false;
    return true;
  }

  /// (this ∘ inner)
  GroupHom compose(const GroupHom& inner) const {
    if (!(inner.codomain_ == domain_)) throw ValidationError("cannot compose homs: groups differ");
    return GroupHom(inner.domain_, codomain_, matrix_ * inner.matrix_);
  }

 private:
  AbelianGroup domain_;
  AbelianGroup codomain_;
  IntMatrix matrix_;
};

namespace detail {

/// Columns d_i e_i for the torsion coordinates of g.
inline std::vector<IntVector> torsion_relations(const AbelianGroup& g) {
  std::vector<IntVector> rel;
  for (std::size_t i = g.free_rank(); i < g.num_coords(); ++i) {
    IntVector v(g.num_coords());
    v[i] = g.modulus(i);
    rel.push_back(std::move(v));
  }
  return rel;
}

/// Presentation of L / N where L has basis `basis` (columns in Z^n) and N ⊆ L is
/// spanned by `sub` (columns in Z^n).
struct LatticeQuotient {
  AbelianGroup group;
  IntMatrix coord_map;  // rows: quotient coordinates as functionals of L-coordinates
  IntMatrix embedding;  // columns: lifts of quotient generators, in Z^n
};

inline LatticeQuotient lattice_quotient(const IntMatrix& basis, const std::vector<IntVector>& sub) {
  const std::size_t ell = basis.cols();
  IntMatrix rel(ell, sub.size());
  for (std::size_t j = 0; j < sub.size(); ++j) {
    auto c = integer_solve(basis, sub[j]);
    if (!c) throw ValidationError("subgroup element does not lie in the lattice");
    for (std::size_t i = 0; i < ell; ++i) rel(i, j) = (*c)[i];
  }
  const SmithForm f = smith_normal_form(rel);

  std::vector<std::size_t> free_idx, tors_idx;
  IntVector orders;
  for (std::size_t i = 0; i < ell; ++i) {
    if (i >= f.rank) {
      free_idx.push_back(i);
    } else if (f.invariant(i) != 1) {
      tors_idx.push_back(i);
      orders.push_back(f.invariant(i));
    }
  }
  std::vector<std::size_t> order = free_idx;
  order.insert(order.end(), tors_idx.begin(), tors_idx.end());

  LatticeQuotient q;
  q.group = AbelianGroup(free_idx.size(), orders);
  q.coord_map = IntMatrix(order.size(), ell);
  const IntMatrix lifts = basis * f.U_inv;
  q.embedding = IntMatrix(basis.rows(), order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (std::size_t j = 0; j < ell; ++j) q.coord_map(k, j) = f.U(order[k], j);
    for (std::size_t i = 0; i < basis.rows(); ++i) q.embedding(i, k) = lifts(i, order[k]);
  }
  return q;
}

}  // namespace detail

struct KernelResult {
  AbelianGroup group;
  GroupHom inclusion;
};

/// Kernel of f together with its inclusion into the domain.
inline KernelResult hom_kernel(const GroupHom& f) {
  const AbelianGroup& dom = f.domain();
  const AbelianGroup& cod = f.codomain();
  const std::size_t n = dom.num_coords();
  const auto cod_rel = detail::torsion_relations(cod);

  // Preimage lattice {x : f(x) = 0 in cod} = projection of ker [A | C].
  IntMatrix big(cod.num_coords(), n + cod_rel.size());
  for (std::size_t i = 0; i < cod.num_coords(); ++i) {
    for (std::size_t j = 0; j < n; ++j) big(i, j) = f.matrix()(i, j);
    for (std::size_t k = 0; k < cod_rel.size(); ++k) big(i, n + k) = cod_rel[k][i];
  }
  const IntMatrix ker = integer_kernel(big);
  IntMatrix gens(ker.cols(), n);
  for (std::size_t j = 0; j < ker.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) gens(j, i) = ker(i, j);
  const IntMatrix basis = hermite_normal_form(gens).transpose();

  const auto q = detail::lattice_quotient(basis, detail::torsion_relations(dom));
  return {q.group, GroupHom(q.group, dom, q.embedding)};
}

struct QuotientResult {
  AbelianGroup group;
  GroupHom projection;
};

/// G / <H>, where the kernel of the projection is exactly the subgroup
/// generated by H (not its saturation).
inline QuotientResult quotient(const AbelianGroup& g, const std::vector<IntVector>& h) {
  std::vector<IntVector> sub = detail::torsion_relations(g);
  for (const IntVector& x : h) {
    g.check_length(x);
    sub.push_back(x);
  }
  const auto q = detail::lattice_quotient(IntMatrix::identity(g.num_coords()), sub);
  IntMatrix proj = q.coord_map;
  for (std::size_t i = 0; i < proj.rows(); ++i)
    for (std::size_t j = 0; j < proj.cols(); ++j) proj(i, j) = mod_nonneg(proj(i, j), q.group.modulus(i));
  return {q.group, GroupHom(g, q.group, proj)};
}

/// Integer coefficients c with sum c_i h_i = x in G, or nullopt.  Among all
/// witnesses the one reduced against the Hermite basis of the solution lattice
/// is returned, so the answer does not depend on elimination order.
inline std::optional<IntVector> subgroup_membership(const AbelianGroup& g, const std::vector<IntVector>& h,
                                                    const IntVector& x) {
  g.check_length(x);
  const auto rel = detail::torsion_relations(g);
  IntMatrix m(g.num_coords(), h.size() + rel.size());
  for (std::size_t j = 0; j < h.size(); ++j) {
    g.check_length(h[j]);
    for (std::size_t i = 0; i < g.num_coords(); ++i) m(i, j) = h[j][i];
  }
  for (std::size_t k = 0; k < rel.size(); ++k)
    for (std::size_t i = 0; i < g.num_coords(); ++i) m(i, h.size() + k) = rel[k][i];

  auto sol = integer_solve(m, x);
  if (!sol) return std::nullopt;
  const IntMatrix ker = integer_kernel(m);
  if (ker.cols() > 0) *sol = reduce_mod_hnf(std::move(*sol), hermite_normal_form(ker.transpose()));
  sol->resize(h.size());
  return sol;
}

inline std::optional<IntVector> subgroup_membership(const std::vector<GroupElement>& h, const GroupElement& x) {
  std::vector<IntVector> coords;
  for (const GroupElement& e : h) {
    if (!(e.parent() == x.parent())) throw ValidationError("subgroup generators and element have different parents");
    coords.push_back(e.coords());
  }
  return subgroup_membership(x.parent(), coords, x.coords());
}

/// Image of f as generator list (columns of the matrix).
inline std::vector<IntVector> hom_image_generators(const GroupHom& f) {
  std::vector<IntVector> out;
  for (std::size_t j = 0; j < f.matrix().cols(); ++j) out.push_back(f.matrix().column(j));
  return out;
}

/// The subgroup generated by `h`, presented abstractly, with its inclusion.
inline KernelResult subgroup_presentation(const AbelianGroup& g, const std::vector<IntVector>& h) {
  // <h> is the image of Z^|h| -> G; image ≅ Z^|h| / kernel.
  IntMatrix m = IntMatrix::from_columns(h, g.num_coords());
  GroupHom f(AbelianGroup::free(h.size()), g, m);
  const KernelResult k = hom_kernel(f);
  std::vector<IntVector> kgens;
  for (std::size_t j = 0; j < k.inclusion.matrix().cols(); ++j) kgens.push_back(k.inclusion.matrix().column(j));
  const auto q = detail::lattice_quotient(IntMatrix::identity(h.size()), kgens);
  return {q.group, GroupHom(q.group, g, m * q.embedding)};
}

}  // namespace coxring
