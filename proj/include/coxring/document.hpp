#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxring/error.hpp"
#include "coxring/galois.hpp"
#include "coxring/parse.hpp"
#include "coxring/torsor.hpp"

// Text format, one declaration per line, blocks closed by `end`:
//
//   coxdoc 1
//   field NAME                      root r^2 = EXPR ... end
//   group NAME free R [torsion t ...]
//   ring NAME graded by GROUP [over FIELD]
//                                   var x : c ... | rel POLY ... end
//   subgroup NAME in GROUP          gen c ... end
//   hom NAME : GROUP -> GROUP       row a ... end
//   element NAME in GROUP : c ...
//   action NAME on RING             generator g order k [conj l ...]
//                                     perm y ... | scale y SCALAR | grading a ... end ... end
//   cocycle NAME for ACTION         value g : SCALAR ... end
//   scheme NAME on RING             coordinates x ... | project MONOMIAL ... |
//                                   coprime y : MONOMIAL | surface POLY | ample c ... end
//
// '#' starts a comment.  The field Q is predefined.

namespace coxring {

struct RingDecl {
  std::string group;
  std::string field = "Q";
  GradedPresentation ring;
};

struct SubgroupDecl {
  std::string group;
  std::vector<IntVector> generators;
};

struct HomDecl {
  std::string domain;
  std::string codomain;
  GroupHom hom;
};

struct ElementDecl {
  std::string group;
  IntVector coords;
};

struct ActionDecl {
  std::string ring;
  std::vector<std::string> generator_names;
  SemilinearAction action;
  std::vector<bool> explicit_grading;  // per generator: matrix given in the text
};

struct CocycleDecl {
  std::string action;
  Cocycle cocycle;
};

struct SchemeDecl {
  std::string ring;
  ParamScheme scheme;
};

struct Document {
  int version = 1;
  std::map<std::string, TowerPtr> fields;
  std::map<std::string, AbelianGroup> groups;
  std::map<std::string, RingDecl> rings;
  std::map<std::string, SubgroupDecl> subgroups;
  std::map<std::string, HomDecl> homs;
  std::map<std::string, ElementDecl> elements;
  std::map<std::string, ActionDecl> actions;
  std::map<std::string, CocycleDecl> cocycles;
  std::map<std::string, SchemeDecl> schemes;

  TowerPtr field(const std::string& name) const {
    if (name == "Q") return rationals();
    return lookup(fields, name, "field");
  }
  const AbelianGroup& group(const std::string& name) const { return lookup(groups, name, "group"); }
  const RingDecl& ring(const std::string& name) const { return lookup(rings, name, "ring"); }
  const SubgroupDecl& subgroup(const std::string& name) const { return lookup(subgroups, name, "subgroup"); }
  const HomDecl& hom(const std::string& name) const { return lookup(homs, name, "hom"); }
  const ElementDecl& element(const std::string& name) const { return lookup(elements, name, "element"); }
  const ActionDecl& action(const std::string& name) const { return lookup(actions, name, "action"); }
  const CocycleDecl& cocycle(const std::string& name) const { return lookup(cocycles, name, "cocycle"); }
  const SchemeDecl& scheme(const std::string& name) const { return lookup(schemes, name, "scheme"); }

 private:
  template <class Map>
  static const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* kind) {
    auto it = m.find(name);
    if (it == m.end()) throw ValidationError(std::string("no ") + kind + " named '" + name + "'");
    return it->second;
  }
};

// ---- equality ----------------------------------------------------------------

inline bool same_presentation(const GradedPresentation& a, const GradedPresentation& b) {
  return a.group == b.group && *a.field == *b.field && a.names == b.names && a.degrees == b.degrees &&
         a.relations == b.relations;
}

inline bool same_hom(const GroupHom& a, const GroupHom& b) {
  return a.domain() == b.domain() && a.codomain() == b.codomain() && a.matrix() == b.matrix();
}

inline bool operator==(const Document& a, const Document& b) {
  auto same_fields = [&] {
    if (a.fields.size() != b.fields.size()) return false;
    for (const auto& [k, v] : a.fields) {
      auto it = b.fields.find(k);
      if (it == b.fields.end() || !(*v == *it->second)) return false;
    }
    return true;
  };
  auto same_rings = [&] {
    if (a.rings.size() != b.rings.size()) return false;
    for (const auto& [k, v] : a.rings) {
      auto it = b.rings.find(k);
      if (it == b.rings.end() || v.group != it->second.group || v.field != it->second.field ||
          !same_presentation(v.ring, it->second.ring))
        return false;
    }
    return true;
  };
  auto same_subgroups = [&] {
    if (a.subgroups.size() != b.subgroups.size()) return false;
    for (const auto& [k, v] : a.subgroups) {
      auto it = b.subgroups.find(k);
      if (it == b.subgroups.end() || v.group != it->second.group || v.generators != it->second.generators) return false;
    }
    return true;
  };
  auto same_homs = [&] {
    if (a.homs.size() != b.homs.size()) return false;
    for (const auto& [k, v] : a.homs) {
      auto it = b.homs.find(k);
      if (it == b.homs.end() || v.domain != it->second.domain || v.codomain != it->second.codomain ||
          !same_hom(v.hom, it->second.hom))
        return false;
    }
    return true;
  };
  auto same_elements = [&] {
    if (a.elements.size() != b.elements.size()) return false;
    for (const auto& [k, v] : a.elements) {
      auto it = b.elements.find(k);
      if (it == b.elements.end() || v.group != it->second.group || v.coords != it->second.coords) return false;
    }
    return true;
  };
  auto same_actions = [&] {
    if (a.actions.size() != b.actions.size()) return false;
    for (const auto& [k, v] : a.actions) {
      auto it = b.actions.find(k);
      if (it == b.actions.end()) return false;
      const ActionDecl& w = it->second;
      if (v.ring != w.ring || v.generator_names != w.generator_names ||
          v.action.generators.size() != w.action.generators.size())
        return false;
      for (std::size_t j = 0; j < v.action.generators.size(); ++j) {
        const GaloisGenerator& g = v.action.generators[j];
        const GaloisGenerator& h = w.action.generators[j];
        if (g.perm != h.perm || g.multipliers != h.multipliers || g.field_mask != h.field_mask || g.order != h.order ||
            !same_hom(g.grading, h.grading))
          return false;
      }
    }
    return true;
  };
  auto same_cocycles = [&] {
    if (a.cocycles.size() != b.cocycles.size()) return false;
    for (const auto& [k, v] : a.cocycles) {
      auto it = b.cocycles.find(k);
      if (it == b.cocycles.end() || v.action != it->second.action || v.cocycle.values != it->second.cocycle.values)
        return false;
    }
    return true;
  };
  auto same_schemes = [&] {
    if (a.schemes.size() != b.schemes.size()) return false;
    for (const auto& [k, v] : a.schemes) {
      auto it = b.schemes.find(k);
      if (it == b.schemes.end() || v.ring != it->second.ring) return false;
      const ParamScheme& p = v.scheme;
      const ParamScheme& q = it->second.scheme;
      if (!same_presentation(p.presentation, q.presentation) || p.projection != q.projection ||
          p.coordinates != q.coordinates || p.surface != q.surface || p.ample != q.ample ||
          p.coprime.size() != q.coprime.size())
        return false;
      for (std::size_t i = 0; i < p.coprime.size(); ++i)
        if (p.coprime[i].variable != q.coprime[i].variable || p.coprime[i].monomial != q.coprime[i].monomial)
          return false;
    }
    return true;
  };
  return a.version == b.version && same_fields() && a.groups == b.groups && same_rings() && same_subgroups() &&
         same_homs() && same_elements() && same_actions() && same_cocycles() && same_schemes();
}

// ---- parsing -----------------------------------------------------------------

namespace detail {

struct Token {
  std::string text;
  int column;  // 1-based
};

/// Splits at whitespace outside parentheses; '#' starts a comment.
inline std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    const std::size_t start = i;
    int depth = 0;
    while (i < line.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(line[i]))) && line[i] != '#') {
      if (line[i] == '(') ++depth;
      if (line[i] == ')' && --depth < 0) throw ParseError("unbalanced ')'", line_no, static_cast<int>(i) + 1);
      ++i;
    }
    if (depth != 0) throw ParseError("unbalanced '('", line_no, static_cast<int>(start) + 1);
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return out;
}

class DocumentParser {
 public:
  explicit DocumentParser(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
      lines_.emplace_back(text.substr(pos, end - pos));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  Document parse() {
    Document doc;
    bool header = false;
    while (next()) {
      const std::string& kw = tok_[0].text;
      if (!header) {
        if (kw != "coxdoc" || tok_.size() != 2) fail(0, "document must start with 'coxdoc <version>'");
        doc.version = to_int(1);
        if (doc.version != 1) fail(1, "unsupported document version");
        header = true;
        continue;
      }
      if (kw == "field") {
        parse_field(doc);
      } else if (kw == "group") {
        parse_group(doc);
      } else if (kw == "ring") {
        parse_ring(doc);
      } else if (kw == "subgroup") {
        parse_subgroup(doc);
      } else if (kw == "hom") {
        parse_hom(doc);
      } else if (kw == "element") {
        parse_element(doc);
      } else if (kw == "action") {
        parse_action(doc);
      } else if (kw == "cocycle") {
        parse_cocycle(doc);
      } else if (kw == "scheme") {
        parse_scheme(doc);
      } else {
        fail(0, "unknown declaration '" + kw + "'");
      }
    }
    return doc;
  }

 private:
  // Advances to the next non-empty line; false at end of input.
  bool next() {
    while (line_ < lines_.size()) {
      tok_ = tokenize(lines_[line_], static_cast<int>(line_) + 1);
      ++line_;
      if (!tok_.empty()) return true;
    }
    return false;
  }

  int line_no() const { return static_cast<int>(line_); }

  [[noreturn]] void fail(std::size_t token, const std::string& what) const {
    const int col = token < tok_.size() ? tok_[token].column : (tok_.empty() ? 1 : tok_.back().column);
    throw ParseError(what, line_no(), col);
  }

  void expect(std::size_t i, const std::string& word) const {
    if (i >= tok_.size() || tok_[i].text != word) fail(i, "expected '" + word + "'");
  }

  void need(std::size_t count) const {
    if (tok_.size() < count) fail(tok_.size(), "missing arguments");
  }

  void exact(std::size_t count) const {
    if (tok_.size() != count) fail(std::min(count, tok_.size()), "wrong number of arguments");
  }

  int to_int(std::size_t i) const {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok_.at(i).text, &used);
      if (used != tok_[i].text.size()) fail(i, "expected an integer");
      return v;
    } catch (const std::logic_error&) {
      fail(i, "expected an integer");
    }
  }

  Integer to_integer(std::size_t i) const {
    Integer z;
    const std::string& s = tok_.at(i).text;
    if (s.empty() || z.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) fail(i, "expected an integer");
    return z;
  }

  IntVector integers_from(std::size_t first) const {
    IntVector v;
    for (std::size_t i = first; i < tok_.size(); ++i) v.push_back(to_integer(i));
    return v;
  }

  // Everything from token `first` to the end of the line, as written.
  std::string rest(std::size_t first) const {
    if (first >= tok_.size()) fail(first, "missing expression");
    const std::string& l = lines_[line_ - 1];
    std::string s = l.substr(static_cast<std::size_t>(tok_[first].column - 1));
    const auto hash = s.find('#');
    if (hash != std::string::npos) s.resize(hash);
    return s;
  }

  template <class F>
  void block(const std::string& kind, F&& body) {
    const int start = line_no();
    for (;;) {
      if (!next()) throw ParseError("unterminated " + kind + " block", start, 1);
      if (tok_[0].text == "end") {
        exact(1);
        return;
      }
      body();
    }
  }

  template <class Map>
  void unique(const Map& m, std::size_t i) const {
    need(i + 1);
    if (m.count(tok_[i].text)) fail(i, "name '" + tok_[i].text + "' is already declared");
  }

  const AbelianGroup& group_ref(const Document& doc, std::size_t i) const {
    auto it = doc.groups.find(tok_.at(i).text);
    if (it == doc.groups.end()) fail(i, "unknown group '" + tok_[i].text + "'");
    return it->second;
  }

  void check_coords(const AbelianGroup& g, const IntVector& v, std::size_t token) const {
    if (v.size() != g.num_coords())
      fail(token, "expected " + std::to_string(g.num_coords()) + " coordinates, got " + std::to_string(v.size()));
  }

  void parse_field(Document& doc) {
    exact(2);
    if (tok_[1].text == "Q") fail(1, "the field Q is predefined");
    unique(doc.fields, 1);
    const std::string name = tok_[1].text;
    auto tower = std::make_shared<FieldTower>();
    block("field", [&] {
      expect(0, "root");
      need(4);
      const std::string& sq = tok_[1].text;
      if (sq.size() < 3 || sq.substr(sq.size() - 2) != "^2") fail(1, "expected 'name^2'");
      expect(2, "=");
      const TowerPtr current = std::make_shared<const FieldTower>(*tower);
      try {
        const Scalar d = parse_scalar(rest(3), current, line_no(), tok_[3].column);
        std::vector<Rational> coeffs(d.coeffs().begin(), d.coeffs().end());
        coeffs.resize(std::size_t{1} << tower->depth());
        tower->adjoin(std::move(coeffs), sq.substr(0, sq.size() - 2));
      } catch (const ValidationError& e) {
        fail(3, e.what());
      }
    });
    doc.fields.emplace(name, std::move(tower));
  }

  void parse_group(Document& doc) {
    need(4);
    unique(doc.groups, 1);
    expect(2, "free");
    const int rank = to_int(3);
    if (rank < 0) fail(3, "rank must be nonnegative");
    IntVector torsion;
    if (tok_.size() > 4) {
      expect(4, "torsion");
      torsion = integers_from(5);
    }
    try {
      doc.groups.emplace(tok_[1].text, AbelianGroup(static_cast<std::size_t>(rank), torsion));
    } catch (const ValidationError& e) {
      fail(4, e.what());
    }
  }

  void parse_ring(Document& doc) {
    need(5);
    unique(doc.rings, 1);
    expect(2, "graded");
    expect(3, "by");
    RingDecl decl;
    decl.group = tok_[4].text;
    decl.ring.group = group_ref(doc, 4);
    if (tok_.size() > 5) {
      exact(7);
      expect(5, "over");
      decl.field = tok_[6].text;
      if (decl.field != "Q" && !doc.fields.count(decl.field)) fail(6, "unknown field '" + decl.field + "'");
    }
    decl.ring.field = doc.field(decl.field);
    const std::string name = tok_[1].text;
    std::vector<std::pair<std::string, int>> rels;  // text, line
    std::vector<int> rel_cols;
    block("ring", [&] {
      if (tok_[0].text == "var") {
        need(3);
        const std::size_t first = tok_[2].text == ":" ? 3 : 2;
        if (!rels.empty()) fail(0, "variables must precede relations");
        decl.ring.names.push_back(tok_[1].text);
        IntVector d = integers_from(first);
        check_coords(decl.ring.group, d, first);
        decl.ring.degrees.push_back(std::move(d));
      } else if (tok_[0].text == "rel") {
        rels.emplace_back(rest(1), line_no());
        rel_cols.push_back(tok_[1].column);
      } else {
        fail(0, "expected 'var', 'rel' or 'end'");
      }
    });
    for (std::size_t k = 0; k < rels.size(); ++k) {
      Polynomial f = parse_polynomial(rels[k].first, decl.ring.names, decl.ring.field, rels[k].second, rel_cols[k]);
      GradedPresentation probe = decl.ring;
      probe.relations = {f};
      try {
        probe.validate();
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), rels[k].second, rel_cols[k]);
      }
      decl.ring.relations.push_back(std::move(f));
    }
    try {
      decl.ring.validate();
    } catch (const ValidationError& e) {
      fail(0, e.what());
    }
    doc.rings.emplace(name, std::move(decl));
  }

  void parse_subgroup(Document& doc) {
    exact(4);
    unique(doc.subgroups, 1);
    expect(2, "in");
    SubgroupDecl decl{tok_[3].text, {}};
    const AbelianGroup& g = group_ref(doc, 3);
    const std::string name = tok_[1].text;
    block("subgroup", [&] {
      expect(0, "gen");
      IntVector v = integers_from(1);
      check_coords(g, v, 1);
      decl.generators.push_back(g.reduce(std::move(v)));
    });
    doc.subgroups.emplace(name, std::move(decl));
  }

  void parse_hom(Document& doc) {
    exact(6);
    unique(doc.homs, 1);
    expect(2, ":");
    expect(4, "->");
    HomDecl decl{tok_[3].text, tok_[5].text, {}};
    const AbelianGroup dom = group_ref(doc, 3);
    const AbelianGroup cod = group_ref(doc, 5);
    const std::string name = tok_[1].text;
    std::vector<IntVector> rows;
    block("hom", [&] {
      expect(0, "row");
      IntVector r = integers_from(1);
      check_coords(dom, r, 1);
      rows.push_back(std::move(r));
    });
    if (rows.size() != cod.num_coords())
      throw ParseError("hom needs " + std::to_string(cod.num_coords()) + " rows", line_no(), 1);
    try {
      decl.hom = GroupHom(dom, cod, IntMatrix::from_rows(rows, dom.num_coords()));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no(), 1);
    }
    doc.homs.emplace(name, std::move(decl));
  }

  void parse_element(Document& doc) {
    need(5);
    unique(doc.elements, 1);
    expect(2, "in");
    expect(4, ":");
    const AbelianGroup& g = group_ref(doc, 3);
    IntVector v = integers_from(5);
    check_coords(g, v, 5);
    doc.elements.emplace(tok_[1].text, ElementDecl{tok_[3].text, g.reduce(std::move(v))});
  }

  std::size_t variable(const GradedPresentation& r, std::size_t token) const {
    auto i = r.index_of(tok_.at(token).text);
    if (!i) fail(token, "unknown variable '" + tok_[token].text + "'");
    return *i;
  }

  Scalar scalar(std::size_t token, const TowerPtr& field) const {
    return parse_scalar(tok_.at(token).text, field, line_no(), tok_[token].column);
  }

  void parse_action(Document& doc) {
    exact(4);
    unique(doc.actions, 1);
    expect(2, "on");
    auto it = doc.rings.find(tok_[3].text);
    if (it == doc.rings.end()) fail(3, "unknown ring '" + tok_[3].text + "'");
    const GradedPresentation& r = it->second.ring;
    ActionDecl decl;
    decl.ring = tok_[3].text;
    const std::string name = tok_[1].text;
    block("action", [&] {
      expect(0, "generator");
      need(4);
      expect(2, "order");
      const std::string gname = tok_[1].text;
      if (std::find(decl.generator_names.begin(), decl.generator_names.end(), gname) != decl.generator_names.end())
        fail(1, "duplicate generator '" + gname + "'");
      GaloisGenerator g;
      g.order = to_int(3);
      if (g.order < 1) fail(3, "order must be positive");
      if (tok_.size() > 4) {
        expect(4, "conj");
        for (std::size_t i = 5; i < tok_.size(); ++i) {
          const int level = to_int(i);
          if (level < 1 || static_cast<std::size_t>(level) > r.field->depth()) fail(i, "conjugation level out of range");
          g.field_mask |= 1u << (level - 1);
        }
      }
      g.multipliers.assign(r.num_variables(), Scalar(1));
      const int start = line_no();
      std::vector<IntVector> grading;
      bool have_perm = false;
      block("generator", [&] {
        const std::string& kw = tok_[0].text;
        if (kw == "perm") {
          exact(1 + r.num_variables());
          g.perm.clear();
          for (std::size_t i = 1; i < tok_.size(); ++i) g.perm.push_back(variable(r, i));
          have_perm = true;
        } else if (kw == "scale") {
          exact(3);
          g.multipliers[variable(r, 1)] = scalar(2, r.field);
        } else if (kw == "grading") {
          IntVector row = integers_from(1);
          check_coords(r.group, row, 1);
          grading.push_back(std::move(row));
        } else {
          fail(0, "expected 'perm', 'scale', 'grading' or 'end'");
        }
      });
      if (!have_perm) throw ParseError("generator " + gname + " has no permutation", start, 1);
      try {
        if (grading.empty()) {
          g.grading = grading_from_permutation(r, g.perm);
        } else {
          if (grading.size() != r.group.num_coords())
            throw ValidationError("grading matrix needs " + std::to_string(r.group.num_coords()) + " rows");
          g.grading = GroupHom(r.group, r.group, IntMatrix::from_rows(grading, r.group.num_coords()));
        }
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), start, 1);
      }
      decl.explicit_grading.push_back(!grading.empty());
      decl.generator_names.push_back(gname);
      decl.action.generators.push_back(std::move(g));
    });
    doc.actions.emplace(name, std::move(decl));
  }

  void parse_cocycle(Document& doc) {
    exact(4);
    unique(doc.cocycles, 1);
    expect(2, "for");
    auto it = doc.actions.find(tok_[3].text);
    if (it == doc.actions.end()) fail(3, "unknown action '" + tok_[3].text + "'");
    const ActionDecl& a = it->second;
    const GradedPresentation& r = doc.ring(a.ring).ring;
    CocycleDecl decl{tok_[3].text, {}};
    decl.cocycle.values.resize(a.generator_names.size());
    std::vector<bool> seen(a.generator_names.size(), false);
    const std::string name = tok_[1].text;
    const int start = line_no();
    block("cocycle", [&] {
      expect(0, "value");
      need(3);
      const auto g = std::find(a.generator_names.begin(), a.generator_names.end(), tok_[1].text);
      if (g == a.generator_names.end()) fail(1, "unknown group generator '" + tok_[1].text + "'");
      const std::size_t j = static_cast<std::size_t>(g - a.generator_names.begin());
      const std::size_t first = tok_[2].text == ":" ? 3 : 2;
      if (tok_.size() - first != r.group.num_coords())
        fail(first, "expected one value per coordinate of the grading group");
      for (std::size_t i = first; i < tok_.size(); ++i) {
        Scalar v = scalar(i, r.field);
        if (v.is_zero()) fail(i, "cocycle values must be nonzero");
        decl.cocycle.values[j].push_back(std::move(v));
      }
      seen[j] = true;
    });
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw ParseError("cocycle needs a value line for every group generator", start, 1);
    doc.cocycles.emplace(name, std::move(decl));
  }

  void parse_scheme(Document& doc) {
    exact(4);
    unique(doc.schemes, 1);
    expect(2, "on");
    auto it = doc.rings.find(tok_[3].text);
    if (it == doc.rings.end()) fail(3, "unknown ring '" + tok_[3].text + "'");
    SchemeDecl decl{tok_[3].text, {}};
    ParamScheme& ps = decl.scheme;
    ps.presentation = it->second.ring;
    const auto& names = ps.presentation.names;
    const std::string name = tok_[1].text;
    const int start = line_no();
    std::vector<std::pair<std::string, std::pair<int, int>>> surfaces;
    auto monomial = [&](std::size_t first) {
      const Polynomial p = parse_polynomial(rest(first), names, rationals(), line_no(), tok_[first].column);
      if (p.size() != 1 || !p.leading_coefficient().is_one()) fail(first, "expected a monomial");
      return p.leading_exponent();
    };
    block("scheme", [&] {
      const std::string& kw = tok_[0].text;
      if (kw == "coordinates") {
        need(2);
        ps.coordinates.clear();
        for (std::size_t i = 1; i < tok_.size(); ++i) ps.coordinates.push_back(tok_[i].text);
      } else if (kw == "project") {
        ps.projection.push_back(monomial(1));
      } else if (kw == "coprime") {
        need(4);
        expect(2, ":");
        ps.coprime.push_back({variable(ps.presentation, 1), monomial(3)});
      } else if (kw == "surface") {
        surfaces.push_back({rest(1), {line_no(), tok_[1].column}});
      } else if (kw == "ample") {
        IntVector v = integers_from(1);
        check_coords(ps.presentation.group, v, 1);
        ps.ample = std::move(v);
      } else {
        fail(0, "expected 'coordinates', 'project', 'coprime', 'surface', 'ample' or 'end'");
      }
    });
    for (const auto& [text, pos] : surfaces)
      ps.surface.push_back(parse_polynomial(text, ps.coordinates, rationals(), pos.first, pos.second));
    try {
      ps.validate();
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), start, 1);
    }
    doc.schemes.emplace(name, std::move(decl));
  }

  std::vector<std::string> lines_;
  std::size_t line_ = 0;
  std::vector<Token> tok_;
};

inline std::string join(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
  return s;
}

}  // namespace detail

inline Document parse_document(std::string_view text) { return detail::DocumentParser(text).parse(); }

inline std::string serialize_document(const Document& doc) {
  std::ostringstream out;
  out << "coxdoc " << doc.version << "\n";
  for (const auto& [name, f] : doc.fields) {
    out << "\nfield " << name << "\n";
    for (std::size_t l = 1; l <= f->depth(); ++l) {
      // The radicand as an element of the tower below level l.
      auto below = std::make_shared<FieldTower>();
      for (std::size_t k = 1; k < l; ++k) below->adjoin(f->radicand(k), f->root_name(k));
      const auto& r = f->radicand(l);
      const Scalar d(below, detail::Coeffs(r.begin(), r.end()));
      out << "  root " << f->root_name(l) << "^2 = " << d.str() << "\n";
    }
    out << "end\n";
  }
  if (!doc.groups.empty()) out << "\n";
  for (const auto& [name, g] : doc.groups) {
    out << "group " << name << " free " << g.free_rank();
    if (!g.torsion_orders().empty()) out << " torsion " << detail::join(g.torsion_orders());
    out << "\n";
  }
  for (const auto& [name, d] : doc.rings) {
    out << "\nring " << name << " graded by " << d.group;
    if (d.field != "Q") out << " over " << d.field;
    out << "\n";
    for (std::size_t i = 0; i < d.ring.num_variables(); ++i)
      out << "  var " << d.ring.names[i] << " : " << detail::join(d.ring.degrees[i]) << "\n";
    for (const Polynomial& f : d.ring.relations) out << "  rel " << f.str(d.ring.names) << "\n";
    out << "end\n";
  }
  for (const auto& [name, s] : doc.subgroups) {
    out << "\nsubgroup " << name << " in " << s.group << "\n";
    for (const IntVector& g : s.generators) out << "  gen " << detail::join(g) << "\n";
    out << "end\n";
  }
  for (const auto& [name, h] : doc.homs) {
    out << "\nhom " << name << " : " << h.domain << " -> " << h.codomain << "\n";
    for (std::size_t i = 0; i < h.hom.matrix().rows(); ++i) out << "  row " << detail::join(h.hom.matrix().row(i)) << "\n";
    out << "end\n";
  }
  if (!doc.elements.empty()) out << "\n";
  for (const auto& [name, e] : doc.elements) out << "element " << name << " in " << e.group << " : " << detail::join(e.coords) << "\n";
  for (const auto& [name, a] : doc.actions) {
    const GradedPresentation& r = doc.ring(a.ring).ring;
    out << "\naction " << name << " on " << a.ring << "\n";
    for (std::size_t j = 0; j < a.action.generators.size(); ++j) {
      const GaloisGenerator& g = a.action.generators[j];
      out << "  generator " << a.generator_names[j] << " order " << g.order;
      if (g.field_mask != 0) {
        out << " conj";
        for (std::size_t l = 1; l <= FieldTower::kMaxDepth; ++l)
          if (g.field_mask & (1u << (l - 1))) out << " " << l;
      }
      out << "\n    perm";
      for (std::size_t p : g.perm) out << " " << r.names.at(p);
      out << "\n";
      for (std::size_t i = 0; i < g.multipliers.size(); ++i)
        if (!g.multipliers[i].is_one()) out << "    scale " << r.names[i] << " " << g.multipliers[i].str() << "\n";
      if (j < a.explicit_grading.size() && a.explicit_grading[j])
        for (std::size_t i = 0; i < g.grading.matrix().rows(); ++i)
          out << "    grading " << detail::join(g.grading.matrix().row(i)) << "\n";
      out << "  end\n";
    }
    out << "end\n";
  }
  for (const auto& [name, c] : doc.cocycles) {
    const ActionDecl& a = doc.action(c.action);
    out << "\ncocycle " << name << " for " << c.action << "\n";
    for (std::size_t j = 0; j < c.cocycle.values.size(); ++j) {
      out << "  value " << a.generator_names.at(j) << " :";
      for (const Scalar& v : c.cocycle.values[j]) out << " " << v.str();
      out << "\n";
    }
    out << "end\n";
  }
  for (const auto& [name, s] : doc.schemes) {
    const ParamScheme& ps = s.scheme;
    const auto& names = ps.presentation.names;
    out << "\nscheme " << name << " on " << s.ring << "\n  coordinates";
    for (const std::string& c : ps.coordinates) out << " " << c;
    out << "\n";
    for (const Exponent& e : ps.projection) out << "  project " << monomial_string(e, names) << "\n";
    for (const CoprimeClause& c : ps.coprime)
      out << "  coprime " << names.at(c.variable) << " : " << monomial_string(c.monomial, names) << "\n";
    for (const Polynomial& f : ps.surface) out << "  surface " << f.str(ps.coordinates) << "\n";
    if (ps.ample) out << "  ample " << detail::join(*ps.ample) << "\n";
    out << "end\n";
  }
  return out.str();
}

}  // namespace coxring
