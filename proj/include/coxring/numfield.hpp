#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "coxring/integer.hpp"

namespace coxring {

class TowerElement;

/// Tower Q = F_0 ⊂ F_1 ⊂ ... ⊂ F_depth with F_k = F_{k-1}(√d_k), depth <= 2.
/// Radicands are taken as declared; no cross-level simplification.
class FieldTower {
 public:
  static constexpr std::size_t kMaxDepth = 2;

  FieldTower() = default;

  std::size_t depth() const noexcept { return radicands_.size(); }
  /// Radicand of level k (1-based) as coefficient array of length 2^(k-1).
  const std::vector<Rational>& radicand(std::size_t level) const { return radicands_.at(level - 1); }
  const std::string& root_name(std::size_t level) const { return names_.at(level - 1); }
  const std::vector<std::string>& root_names() const noexcept { return names_; }

  /// Adds level depth()+1 with the given radicand (an element of the current top
  /// level, padded to 2^depth coefficients).  Throws if the radicand is a square.
  inline void adjoin(std::vector<Rational> radicand, std::string name);

  friend bool operator==(const FieldTower& a, const FieldTower& b) {
    return a.radicands_ == b.radicands_ && a.names_ == b.names_;
  }

  std::string str() const;

 private:
  std::vector<std::vector<Rational>> radicands_;
  std::vector<std::string> names_;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

inline TowerPtr rationals() {
  static const TowerPtr q = std::make_shared<const FieldTower>();
  return q;
}

inline TowerPtr gaussian_rationals(std::string root = "i") {
  auto t = std::make_shared<FieldTower>();
  t->adjoin({Rational(-1)}, std::move(root));
  return t;
}

namespace detail {

// Coefficient arrays of length 2^level.  The top half is the coefficient of the
// top root: x = lo + hi * √d_level.
using Coeffs = boost::container::small_vector<Rational, 2>;

inline std::size_t level_of(const Coeffs& c) {
  std::size_t l = 0;
  while ((std::size_t{1} << l) < c.size()) ++l;
  return l;
}

template <class Vec>
inline Coeffs lift(const Vec& c, std::size_t level) {
  Coeffs out(std::size_t{1} << level);
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
  return out;
}

inline void trim(Coeffs& c) {
  while (c.size() > 1) {
    const std::size_t half = c.size() / 2;
    bool top_zero = true;
    for (std::size_t i = half; i < c.size(); ++i)
      if (c[i] != 0) {
        top_zero = false;
        break;
      }
    if (!top_zero) break;
    c.resize(half);
  }
}

inline Coeffs add(const Coeffs& a, const Coeffs& b) {
  const std::size_t n = std::max(a.size(), b.size());
  Coeffs c(n);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return c;
}

inline Coeffs neg(const Coeffs& a) {
  Coeffs c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

// Both operands must have the same length 2^level.
inline Coeffs mul_same(const FieldTower& t, const Coeffs& a, const Coeffs& b) {
  if (a.size() == 1) return {a[0] * b[0]};
  const std::size_t half = a.size() / 2;
  const Coeffs a0(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(half));
  const Coeffs a1(a.begin() + static_cast<std::ptrdiff_t>(half), a.end());
  const Coeffs b0(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(half));
  const Coeffs b1(b.begin() + static_cast<std::ptrdiff_t>(half), b.end());
  const std::size_t level = level_of(a);
  const Coeffs d = lift(t.radicand(level), level - 1);
  const Coeffs lo = add(mul_same(t, a0, b0), mul_same(t, d, mul_same(t, a1, b1)));
  const Coeffs hi = add(mul_same(t, a0, b1), mul_same(t, a1, b0));
  Coeffs out(a.size());
  for (std::size_t i = 0; i < half; ++i) {
    out[i] = lo[i];
    out[half + i] = hi[i];
  }
  return out;
}

inline Coeffs mul(const FieldTower& t, const Coeffs& a, const Coeffs& b) {
  if (a.size() == 1 && b.size() == 1) return {a[0] * b[0]};
  if (a.size() == 1 || b.size() == 1) {
    const Rational& s = a.size() == 1 ? a[0] : b[0];
    const Coeffs& v = a.size() == 1 ? b : a;
    Coeffs c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = s * v[i];
    return c;
  }
  const std::size_t level = std::max(level_of(a), level_of(b));
  return mul_same(t, lift(a, level), lift(b, level));
}

// Negates the coefficient of √d_level at every depth above it, recursively.
inline Coeffs conj(const Coeffs& a, std::size_t level) {
  const std::size_t l = level_of(a);
  if (level > l || level == 0) return a;
  Coeffs out = a;
  const std::size_t block = std::size_t{1} << level;
  const std::size_t half = block / 2;
  for (std::size_t start = 0; start < a.size(); start += block)
    for (std::size_t i = start + half; i < start + block; ++i) out[i] = -out[i];
  return out;
}

inline bool is_zero(const Coeffs& a) {
  for (const Rational& q : a)
    if (q != 0) return false;
  return true;
}

inline Coeffs inv(const FieldTower& t, const Coeffs& a) {
  if (is_zero(a)) throw ValidationError("division by zero in field tower");
  if (a.size() == 1) return {1 / a[0]};
  // (lo + hi√d)^-1 = (lo - hi√d) / (lo^2 - d hi^2)
  const std::size_t level = level_of(a);
  const std::size_t half = a.size() / 2;
  const Coeffs lo(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(half));
  const Coeffs hi(a.begin() + static_cast<std::ptrdiff_t>(half), a.end());
  const Coeffs d = lift(t.radicand(level), level - 1);
  Coeffs norm = add(mul_same(t, lo, lo), neg(mul_same(t, d, mul_same(t, hi, hi))));
  const Coeffs ninv = lift(inv(t, [&] {
                             Coeffs n = norm;
                             trim(n);
                             return n;
                           }()),
                           level - 1);
  const Coeffs nlo = mul_same(t, lo, ninv);
  const Coeffs nhi = neg(mul_same(t, hi, ninv));
  Coeffs out(a.size());
  for (std::size_t i = 0; i < half; ++i) {
    out[i] = nlo[i];
    out[half + i] = nhi[i];
  }
  return out;
}

inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const Integer n = q.get_num();
  const Integer d = q.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
  return make_rational(sqrt(n), sqrt(d));
}

}  // namespace detail

/// Exact scalar in a FieldTower.  Rationals need no tower; higher levels carry
/// a shared pointer to theirs.  b = 0 collapses to the lower level.
class TowerElement {
 public:
  TowerElement() : c_{Rational(0)} {}
  TowerElement(long v) : c_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  TowerElement(const Integer& v) : c_{Rational(v)} {}  // NOLINT
  TowerElement(const Rational& v) : c_{v} { c_[0].canonicalize(); }  // NOLINT

  TowerElement(TowerPtr tower, detail::Coeffs coeffs) : tower_(std::move(tower)), c_(std::move(coeffs)) {
    if (c_.empty() || (c_.size() & (c_.size() - 1)) != 0) throw ValidationError("coefficient array must have 2^k entries");
    if (detail::level_of(c_) > (tower_ ? tower_->depth() : 0)) throw ValidationError("element exceeds tower depth");
    for (Rational& q : c_) q.canonicalize();
    normalize();
  }

  /// The adjoined root √d_level of `tower`.
  static TowerElement root(const TowerPtr& tower, std::size_t level) {
    if (level == 0 || level > tower->depth()) throw ValidationError("root level out of range");
    detail::Coeffs c(std::size_t{1} << level);
    c[std::size_t{1} << (level - 1)] = 1;
    return TowerElement(tower, std::move(c));
  }

  const TowerPtr& tower() const noexcept { return tower_; }
  const detail::Coeffs& coeffs() const noexcept { return c_; }
  std::size_t level() const noexcept { return detail::level_of(c_); }
  bool is_zero() const { return c_.size() == 1 && c_[0] == 0; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_rational() const noexcept { return c_.size() == 1; }
  const Rational& rational() const {
    if (!is_rational()) throw ValidationError("tower element is not rational");
    return c_[0];
  }

  /// Lower half / upper half views: x = a + b·√d at the element's own level.
  std::pair<TowerElement, TowerElement> split() const {
    if (is_rational()) return {*this, TowerElement()};
    const std::size_t half = c_.size() / 2;
    return {TowerElement(tower_, detail::Coeffs(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(half))),
            TowerElement(tower_, detail::Coeffs(c_.begin() + static_cast<std::ptrdiff_t>(half), c_.end()))};
  }

  /// Field automorphism negating √d_level and fixing lower levels.  Higher
  /// roots are kept fixed, which is only an automorphism when their radicands
  /// are fixed; that is checked.
  TowerElement conjugate(std::size_t level) const {
    if (level == 0) return *this;
    if (tower_ && level > tower_->depth()) throw ValidationError("conjugation level out of range");
    if (!tower_ && !is_rational()) throw ValidationError("conjugation level out of range");
    if (tower_) {
      for (std::size_t up = level + 1; up <= tower_->depth(); ++up) {
        const auto& r = tower_->radicand(up);
        const detail::Coeffs d(r.begin(), r.end());
        if (detail::conj(d, level) != d)
          throw ValidationError("conjugation at level " + std::to_string(level) + " does not fix the radicand of level " +
                                std::to_string(up));
      }
    }
    TowerElement r = *this;
    r.c_ = detail::conj(c_, level);
    r.normalize();
    return r;
  }

  TowerElement conjugate_mask(unsigned mask) const {
    TowerElement r = *this;
    for (std::size_t l = 1; l <= FieldTower::kMaxDepth; ++l)
      if (mask & (1u << (l - 1))) r = r.conjugate(l);
    return r;
  }

  TowerElement inverse() const {
    TowerElement r(tower_for(*this, *this), detail::inv(tower_ref(), c_));
    return r;
  }

  friend TowerElement operator+(const TowerElement& a, const TowerElement& b) {
    if (a.is_rational() && b.is_rational()) return canonical(a.c_[0] + b.c_[0]);
    return TowerElement(tower_for(a, b), detail::add(a.c_, b.c_));
  }
  friend TowerElement operator-(const TowerElement& a) {
    TowerElement r = a;
    for (Rational& q : r.c_) q = -q;
    return r;
  }
  friend TowerElement operator-(const TowerElement& a, const TowerElement& b) { return a + (-b); }
  friend TowerElement operator*(const TowerElement& a, const TowerElement& b) {
    if (a.is_rational() && b.is_rational()) return canonical(a.c_[0] * b.c_[0]);
    const TowerPtr t = tower_for(a, b);
    return TowerElement(t, detail::mul(*t, a.c_, b.c_));
  }
  friend TowerElement operator/(const TowerElement& a, const TowerElement& b) {
    if (a.is_rational() && b.is_rational()) {
      if (b.c_[0] == 0) throw ValidationError("division by zero");
      return canonical(a.c_[0] / b.c_[0]);
    }
    return a * b.inverse();
  }
  TowerElement& operator+=(const TowerElement& o) { return *this = *this + o; }
  TowerElement& operator-=(const TowerElement& o) { return *this = *this - o; }
  TowerElement& operator*=(const TowerElement& o) { return *this = *this * o; }

  friend bool operator==(const TowerElement& a, const TowerElement& b) { return a.c_ == b.c_; }
  friend bool operator!=(const TowerElement& a, const TowerElement& b) { return !(a == b); }

  /// Total order for use as map key; no algebraic meaning.
  friend bool operator<(const TowerElement& a, const TowerElement& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
  }

  /// Human-readable form, e.g. "3", "-1/2", "(3+2i)".
  std::string str() const;

  friend std::ostream& operator<<(std::ostream& os, const TowerElement& x) { return os << x.str(); }

 private:
  // GMP arithmetic on canonical operands already returns canonical values.
  static TowerElement canonical(Rational v) {
    TowerElement r;
    r.c_[0] = std::move(v);
    return r;
  }
  void normalize() {
    detail::trim(c_);
    if (c_.size() == 1) tower_.reset();
  }
  const FieldTower& tower_ref() const { return tower_ ? *tower_ : *rationals(); }

  static TowerPtr tower_for(const TowerElement& a, const TowerElement& b) {
    if (a.tower_ && b.tower_ && a.tower_ != b.tower_ && !(*a.tower_ == *b.tower_))
      throw ValidationError("tower elements belong to different field towers");
    if (a.tower_) return a.tower_;
    if (b.tower_) return b.tower_;
    return rationals();
  }

  TowerPtr tower_;
  detail::Coeffs c_;
};

inline void FieldTower::adjoin(std::vector<Rational> radicand, std::string name) {
  if (depth() >= kMaxDepth) throw ValidationError("field towers are limited to two quadratic extensions");
  const std::size_t len = std::size_t{1} << depth();
  if (radicand.size() > len) throw ValidationError("radicand lives above the current top level");
  radicand.resize(len);
  detail::Coeffs r(radicand.begin(), radicand.end());
  detail::trim(r);
  if (detail::is_zero(r)) throw ValidationError("radicand must be nonzero");

  // Non-square test.
  bool square = false;
  if (r.size() == 1) {
    square = detail::rational_sqrt(r[0]).has_value();
    if (!square && depth() == 1) {
      // a ∈ Q is a square in Q(√d) iff a or a/d is a rational square.
      const auto& d = radicands_[0];
      square = detail::rational_sqrt(r[0] / d[0]).has_value();
    }
  } else {
    // r = a + b√d with b != 0 is a square in Q(√d) iff N(r) = a² - d b² is a
    // rational square n² and one of (a ± n)/2 is a rational square.
    const Rational& a = r[0];
    const Rational& b = r[1];
    const Rational& d = radicands_[0][0];
    const auto n = detail::rational_sqrt(a * a - d * b * b);
    if (n) square = detail::rational_sqrt((a + *n) / 2).has_value() || detail::rational_sqrt((a - *n) / 2).has_value();
  }
  if (square) throw ValidationError("radicand of level " + std::to_string(depth() + 1) + " is a square");
  radicands_.push_back(std::move(radicand));
  names_.push_back(std::move(name));
}

inline std::string TowerElement::str() const {
  if (is_rational()) return to_string(c_[0]);
  // Expand over the monomial basis of roots: index bit k <-> root of level k+1.
  const FieldTower& t = tower_ref();
  std::string s = "(";
  bool first = true;
  for (std::size_t idx = 0; idx < c_.size(); ++idx) {
    const Rational& q = c_[idx];
    if (q == 0) continue;
    std::string roots;
    for (std::size_t k = 0; (std::size_t{1} << k) <= idx; ++k)
      if (idx & (std::size_t{1} << k)) roots += (roots.empty() ? "" : "*") + t.root_name(k + 1);
    std::string coeff = to_string(abs(q));
    std::string term;
    if (roots.empty()) {
      term = coeff;
    } else if (t.root_name(1) == "i" && roots == "i" && q.get_den() == 1) {
      term = coeff + "i";
    } else {
      term = (coeff == "1" ? "" : coeff + "*") + roots;
    }
    if (first) {
      s += (q < 0 ? "-" : "") + term;
    } else {
      s += (q < 0 ? "-" : "+") + term;
    }
    first = false;
  }
  return s + ")";
}

inline std::string FieldTower::str() const {
  if (radicands_.empty()) return "Q";
  std::string s = "Q";
  for (std::size_t l = 1; l <= depth(); ++l) {
    TowerElement d(std::make_shared<FieldTower>(*this), detail::Coeffs(radicands_[l - 1].begin(), radicands_[l - 1].end()));
    s += "(" + names_[l - 1] + "^2=" + d.str() + ")";
  }
  return s;
}

/// Conjugation negating √d at `level` (1-based); rationals are fixed.
inline TowerElement conjugate(const TowerElement& x, std::size_t level) { return x.conjugate(level); }

namespace detail {

// Trial-division factorisation; inputs here are products of small integers.
inline std::vector<std::pair<Integer, unsigned>> factor(Integer n) {
  std::vector<std::pair<Integer, unsigned>> out;
  n = abs(n);
  for (Integer p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (divides(p, n)) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline Integer powm(const Integer& b, const Integer& e, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Cornacchia for x² + y² = p, p ≡ 1 (mod 4) prime.
inline std::pair<Integer, Integer> two_squares_prime(const Integer& p) {
  if (p == 2) return {1, 1};
  Integer c = 2;
  while (powm(c, (p - 1) / 2, p) != p - 1) ++c;
  Integer r0 = p;
  Integer r1 = powm(c, (p - 1) / 4, p);
  if (2 * r1 > p) r1 = p - r1;
  while (r1 * r1 > p) {
    Integer t = r0 % r1;
    r0 = r1;
    r1 = t;
  }
  Integer y2 = p - r1 * r1;
  Integer y = sqrt(y2);
  return {r1, y};
}

}  // namespace detail

/// A witness (α, β) with α² + β² = q, or nullopt when q is not a sum of two
/// rational squares.  The witness is built from Gaussian-integer factors of
/// numerator·denominator and returned with 0 <= α <= β.
inline std::optional<std::pair<Rational, Rational>> sum_of_two_squares(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return std::make_pair(Rational(0), Rational(0));
  const Integer num = q.get_num();
  const Integer den = q.get_den();
  // q = (num·den) / den²
  Integer re = 1, im = 0;
  for (const auto& [p, e] : detail::factor(num * den)) {
    if (p % 4 == 3) {
      if (e % 2 != 0) return std::nullopt;
      Integer s;
      mpz_pow_ui(s.get_mpz_t(), p.get_mpz_t(), e / 2);
      re *= s;
      im *= s;
      continue;
    }
    const auto [a, b] = detail::two_squares_prime(p);
    for (unsigned k = 0; k < e; ++k) {
      Integer nr = re * a - im * b;
      Integer ni = re * b + im * a;
      re = std::move(nr);
      im = std::move(ni);
    }
  }
  Rational alpha = make_rational(abs(re), den);
  Rational beta = make_rational(abs(im), den);
  if (alpha > beta) std::swap(alpha, beta);
  return std::make_pair(alpha, beta);
}

}  // namespace coxring
