#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "coxring/error.hpp"
#include "coxring/numfield.hpp"
#include "coxring/polynomial.hpp"

namespace coxring {

namespace detail {

// Recursive-descent parser for
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)*        juxtaposition only after a number
//   factor := atom ['^' integer]
//   atom   := integer ['/' integer] | name | '(' expr ')'
// Names resolve to ring variables first, then to roots of the field tower.
class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& names, const TowerPtr& field, int line, int column)
      : s_(text), names_(names), field_(field), line_(line), col0_(column) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, col0_ + static_cast<int>(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  Polynomial constant(const Scalar& c) const { return Polynomial::constant(names_.size(), c); }

  Polynomial expr() {
    skip();
    bool negate = false;
    if (eat('-')) {
      negate = true;
    } else {
      eat('+');
    }
    Polynomial p = term();
    if (negate) p = -p;
    for (;;) {
      if (eat('+')) {
        p += term();
      } else if (eat('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }

  bool at_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '(' || c == '_' || std::isalnum(static_cast<unsigned char>(c));
  }

  Polynomial term() {
    bool numeric = false;
    Polynomial p = factor(numeric);
    for (;;) {
      if (eat('*')) {
        p *= factor(numeric);
      } else if (numeric && at_atom()) {
        p *= factor(numeric);  // "3x" or "2i"
      } else {
        return p;
      }
    }
  }

  Polynomial factor(bool& numeric) {
    Polynomial base = atom(numeric);
    if (eat('^')) {
      const Integer k = integer();
      if (k > 1000) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(k.get_ui()));
    }
    return base;
  }

  Polynomial atom(bool& numeric) {
    skip();
    numeric = false;
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const Integer num = integer();
      Integer den = 1;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      numeric = true;
      return constant(Scalar(make_rational(num, den)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                  s_[pos_] == '[' || s_[pos_] == ']' || s_[pos_] == '\''))
        ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return Polynomial::variable(names_.size(), i);
      if (field_)
        for (std::size_t l = 1; l <= field_->depth(); ++l)
          if (field_->root_name(l) == name) return constant(TowerElement::root(field_, l));
      pos_ = start;
      fail("unknown name '" + name + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& names_;
  TowerPtr field_;
  int line_;
  int col0_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial over `names` with coefficients in `field`.  Line and
/// column locate the text inside a larger document for error messages.
inline Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names,
                                   const TowerPtr& field = rationals(), int line = 1, int column = 1) {
  return detail::PolyParser(text, names, field, line, column).parse();
}

/// Parses a scalar such as "3", "-1/2", "(3+2i)" or "2i".
inline Scalar parse_scalar(std::string_view text, const TowerPtr& field = rationals(), int line = 1, int column = 1) {
  static const std::vector<std::string> none;
  const Polynomial p = parse_polynomial(text, none, field, line, column);
  if (p.is_zero()) return Scalar();
  return p.leading_coefficient();
}

}  // namespace coxring
