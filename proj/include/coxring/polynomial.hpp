#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coxring/lattice.hpp"
#include "coxring/numfield.hpp"

namespace coxring {

using Scalar = TowerElement;

struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const { return grlex_less(a, b); }
};

/// Sparse polynomial in a fixed number of variables.  Terms are kept in
/// graded-lex order; the leading term is the largest one.
class Polynomial {
 public:
  using Terms = std::map<Exponent, Scalar, GrlexLess>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Scalar& c) {
    Polynomial p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }
  static Polynomial variable(std::size_t nvars, std::size_t i) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    return monomial(std::move(e));
  }
  static Polynomial monomial(Exponent e, const Scalar& c = Scalar(1)) {
    Polynomial p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }

  std::size_t num_variables() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  void add_term(Exponent e, const Scalar& c) {
    if (e.size() != nvars_) throw ValidationError("monomial has wrong number of variables");
    for (int x : e)
      if (x < 0) throw ValidationError("negative exponent");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  const Exponent& leading_exponent() const {
    if (is_zero()) throw ValidationError("zero polynomial has no leading term");
    return terms_.rbegin()->first;
  }
  const Scalar& leading_coefficient() const {
    if (is_zero()) throw ValidationError("zero polynomial has no leading term");
    return terms_.rbegin()->second;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, coxring::total_degree(e));
    return d;
  }

  Scalar coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar() : it->second;
  }

  bool is_rational() const {
    for (const auto& [e, c] : terms_)
      if (!c.is_rational()) return false;
    return true;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    a.check_same(b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial r(a.nvars_);
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    a.check_same(b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    Polynomial r(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend Polynomial operator*(const Scalar& s, const Polynomial& a) {
    Polynomial r(a.nvars_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(unsigned k) const {
    Polynomial r = constant(nvars_, Scalar(1));
    Polynomial base = *this;
    while (k) {
      if (k & 1) r *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return r;
  }

  /// Multiplies by the monomial x^e.
  Polynomial shift(const Exponent& e) const {
    Polynomial r(nvars_);
    Exponent f(nvars_);
    for (const auto& [ea, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) f[i] = ea[i] + e[i];
      r.terms_.emplace(f, c);
    }
    return r;
  }

  /// Applies a field automorphism (conjugation mask) to every coefficient.
  Polynomial conjugate(unsigned mask) const {
    if (mask == 0) return *this;
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.conjugate_mask(mask));
    return r;
  }

  /// Replaces variable i by images[i]; all images share one variable count.
  Polynomial substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != nvars_) throw ValidationError("substitution needs one image per variable");
    const std::size_t m = images.empty() ? 0 : images.front().nvars_;
    for (const Polynomial& p : images)
      if (p.nvars_ != m) throw ValidationError("substitution images live in different rings");
    std::vector<std::vector<Polynomial>> powers(nvars_);
    Polynomial r(m);
    for (const auto& [e, c] : terms_) {
      Polynomial t = constant(m, c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(constant(m, Scalar(1)));
        while (pw.size() <= static_cast<std::size_t>(e[i])) pw.push_back(pw.back() * images[i]);
        t *= pw[static_cast<std::size_t>(e[i])];
      }
      r += t;
    }
    return r;
  }

  /// Human-readable form, terms in descending graded-lex order.
  std::string str(const std::vector<std::string>& names) const;

 private:
  void check_same(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw ValidationError("polynomials live in rings with different variable counts");
  }

  std::size_t nvars_;
  Terms terms_;
};

inline std::string monomial_string(const Exponent& e, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names.at(i);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::string Polynomial::str(const std::vector<std::string>& names) const {
  if (is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Exponent& e = it->first;
    Scalar c = it->second;
    const bool negative = c.is_rational() && c.rational() < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    const bool constant_term = coxring::total_degree(e) == 0;
    if (constant_term) {
      s += c.str();
    } else if (c.is_one()) {
      s += monomial_string(e, names);
    } else {
      s += c.str() + "*" + monomial_string(e, names);
    }
  }
  return s;
}

/// Scales p to a canonical representative: rational polynomials become
/// primitive integer polynomials with positive leading coefficient, others get
/// leading coefficient 1.
inline Polynomial normalize_polynomial(const Polynomial& p) {
  if (p.is_zero()) return p;
  if (!p.is_rational()) return p.leading_coefficient().inverse() * p;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : p.terms()) {
    num_gcd = gcd(num_gcd, Integer(c.rational().get_num()));
    den_lcm = lcm(den_lcm, Integer(c.rational().get_den()));
  }
  Rational f = make_rational(den_lcm, num_gcd);
  if (p.leading_coefficient().rational() < 0) f = -f;
  return Scalar(f) * p;
}

}  // namespace coxring
