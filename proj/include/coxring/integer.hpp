#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "coxring/error.hpp"

namespace coxring {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// Floor division (rounds toward negative infinity).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Representative of a modulo m in [0, |m|); m == 0 leaves a unchanged.
inline Integer mod_nonneg(const Integer& a, const Integer& m) {
  if (m == 0) return a;
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

inline bool divides(const Integer& d, const Integer& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline IntVector int_vector(std::initializer_list<long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

/// Converts to int64, throwing when the value does not fit.
inline std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw BoundExceeded("integer " + z.get_str() + " does not fit in 64 bits");
  return z.get_si();
}

}  // namespace coxring
