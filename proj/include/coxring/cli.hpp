#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coxring/bundled.hpp"
#include "coxring/document.hpp"
#include "coxring/galois.hpp"
#include "coxring/torsor.hpp"
#include "coxring/veronese.hpp"

namespace coxring {

struct Flags {
  std::string ring;
  std::string subgroup;
  std::string hom;
  std::string degree;
  std::string action;
  std::string cocycle;
  std::string scheme;
  std::vector<std::string> polys;
  int bound = 6;
  int cap = 64;
  std::int64_t height = 2;
  std::optional<std::int64_t> coverage;  // surface height for param-check coverage
  int steps = 2;
  bool json = false;
};

struct CommandResult {
  int exit_code = 0;
  std::string output;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "snf",     "kernel",      "fiber", "hilbert",        "veronese",    "pullback",
      "minimize", "check-action", "descend", "twist",       "cocycle-from-n", "two-squares",
      "irrelevant", "generated-in-degree", "check-relations", "param-check"};
  return names;
}

namespace detail {

using nlohmann::ordered_json;

inline ordered_json to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline ordered_json to_json(const IntVector& v) {
  ordered_json a = ordered_json::array();
  for (const Integer& z : v) a.push_back(to_json(z));
  return a;
}

inline ordered_json to_json(const IntMatrix& m) {
  ordered_json a = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline ordered_json to_json(const AbelianGroup& g) {
  return {{"free_rank", g.free_rank()}, {"torsion", to_json(g.torsion_orders())}};
}

/// Coefficients on the power basis of the tower, as exact rational strings.
inline ordered_json to_json(const Scalar& s) {
  ordered_json c = ordered_json::array();
  for (const Rational& q : s.coeffs()) c.push_back(q.get_str());
  return {{"level", s.level()}, {"coefficients", c}, {"text", s.str()}};
}

inline ordered_json to_json(const Exponent& e) {
  ordered_json a = ordered_json::array();
  for (int x : e) a.push_back(x);
  return a;
}

inline ordered_json to_json(const Polynomial& f, const std::vector<std::string>& names) {
  ordered_json terms = ordered_json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exponent", to_json(e)}, {"coefficient", to_json(c)}});
  return {{"text", f.str(names)}, {"terms", terms}};
}

inline std::string field_name(const TowerPtr& f) { return f->depth() == 0 ? "Q" : f->str(); }

inline ordered_json to_json(const GradedPresentation& p) {
  ordered_json gens = ordered_json::array();
  for (std::size_t i = 0; i < p.num_variables(); ++i)
    gens.push_back({{"name", p.names[i]}, {"degree", to_json(p.degrees[i])}});
  ordered_json rels = ordered_json::array();
  for (const Polynomial& f : p.relations) rels.push_back(to_json(f, p.names));
  return {{"field", field_name(p.field)}, {"group", to_json(p.group)}, {"generators", gens}, {"relations", rels}};
}

inline std::string vec_text(const IntVector& v) { return degree_string(v); }

inline std::string group_text(const AbelianGroup& g) { return g.str(); }

inline std::string matrix_text(const IntMatrix& m, const std::string& indent = "  ") {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += indent;
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + m(i, j).get_str();
    s += "\n";
  }
  return s;
}

inline std::string presentation_text(const GradedPresentation& p) {
  std::ostringstream out;
  out << "field " << field_name(p.field) << "\ngroup " << group_text(p.group) << "\n";
  out << "generators " << p.num_variables() << "\n";
  for (std::size_t i = 0; i < p.num_variables(); ++i) out << "  " << p.names[i] << " : " << vec_text(p.degrees[i]) << "\n";
  out << "relations " << p.relations.size() << "\n";
  for (const Polynomial& f : p.relations) out << "  " << f.str(p.names) << "\n";
  return out.str();
}

inline IntMatrix degree_matrix(const GradedPresentation& p) {
  return IntMatrix::from_columns(p.degrees, p.group.num_coords());
}

inline std::string pullback_text(const PullbackResult& pr) {
  std::ostringstream out;
  out << presentation_text(pr.presentation);
  out << "images\n";
  for (std::size_t i = 0; i < pr.images.size(); ++i)
    out << "  " << pr.presentation.names[i] << " = " << pr.images[i].str(pr.ambient.names) << "\n";
  out << "degree matrix\n" << matrix_text(degree_matrix(pr.presentation));
  return out.str();
}

inline ordered_json pullback_json(const PullbackResult& pr) {
  ordered_json j = to_json(pr.presentation);
  ordered_json images = ordered_json::array();
  for (std::size_t i = 0; i < pr.images.size(); ++i) images.push_back(to_json(pr.images[i], pr.ambient.names));
  j["images"] = images;
  j["degree_matrix"] = to_json(degree_matrix(pr.presentation));
  j["to_ambient"] = to_json(pr.to_ambient.matrix());
  j["degree_bound"] = pr.degree_bound_used;
  return j;
}

inline std::string descent_text(const DescentResult& d, const GradedPresentation& source) {
  std::ostringstream out;
  out << presentation_text(d.presentation) << "images\n";
  for (std::size_t i = 0; i < d.images.size(); ++i)
    out << "  " << d.presentation.names[i] << " = " << d.images[i].str(source.names) << "\n";
  out << "grading projection\n" << matrix_text(d.projection.matrix());
  return out.str();
}

inline ordered_json descent_json(const DescentResult& d, const GradedPresentation& source) {
  ordered_json j = to_json(d.presentation);
  ordered_json images = ordered_json::array();
  for (const Polynomial& f : d.images) images.push_back(to_json(f, source.names));
  j["images"] = images;
  j["grading_projection"] = to_json(d.projection.matrix());
  return j;
}

inline std::string monomials_text(const std::vector<Exponent>& ms, const std::vector<std::string>& names) {
  std::string s;
  for (const Exponent& e : ms) s += "  " + monomial_string(e, names) + "\n";
  return s;
}

inline ordered_json monomials_json(const std::vector<Exponent>& ms, const std::vector<std::string>& names) {
  ordered_json a = ordered_json::array();
  for (const Exponent& e : ms) a.push_back({{"monomial", monomial_string(e, names)}, {"exponent", to_json(e)}});
  return a;
}

inline std::string point_text(const std::vector<Integer>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " : " : "") + p[i].get_str();
  return s + ")";
}

inline std::string rational_square(const Rational& q) {
  return q.get_den() == 1 ? q.get_str() + "^2" : "(" + q.get_str() + ")^2";
}

inline Rational parse_rational(const std::string& s) {
  try {
    const Scalar v = parse_scalar(s);
    if (!v.is_rational()) throw ValidationError("expected a rational number, got '" + s + "'");
    return v.rational();
  } catch (const ParseError& e) {
    throw ValidationError("expected a rational number, got '" + s + "'");
  }
}

class Runner {
 public:
  Runner(const Document& doc, const Flags& flags, std::vector<std::string> args)
      : doc_(doc), flags_(flags), args_(std::move(args)) {}

  CommandResult run(const std::string& cmd) {
    if (cmd == "snf") return snf();
    if (cmd == "kernel") return kernel();
    if (cmd == "fiber") return fiber();
    if (cmd == "hilbert") return hilbert();
    if (cmd == "veronese") return veronese();
    if (cmd == "pullback") return pullback();
    if (cmd == "minimize") return minimize();
    if (cmd == "check-action") return check_action_cmd();
    if (cmd == "descend") return descend_cmd();
    if (cmd == "twist") return twist();
    if (cmd == "cocycle-from-n") return cocycle_cmd();
    if (cmd == "two-squares") return two_squares();
    if (cmd == "irrelevant") return irrelevant();
    if (cmd == "generated-in-degree") return generated();
    if (cmd == "check-relations") return check_relations();
    if (cmd == "param-check") return param_check();
    throw ValidationError("unknown command '" + cmd + "'");
  }

 private:
  CommandResult emit(const ordered_json& j, const std::string& text, int code = 0) const {
    return {code, flags_.json ? j.dump(2) + "\n" : text};
  }

  static const std::string& required(const std::string& value, const char* flag) {
    if (value.empty()) throw ValidationError(std::string("missing ") + flag);
    return value;
  }

  void no_args(const char* cmd) const {
    if (!args_.empty()) throw ValidationError(std::string(cmd) + " takes no positional arguments");
  }

  const RingDecl& ring_decl() const { return doc_.ring(required(flags_.ring, "--ring")); }
  const GradedPresentation& ring() const { return ring_decl().ring; }

  std::vector<IntVector> subgroup_for(const GradedPresentation& r) const {
    const SubgroupDecl& s = doc_.subgroup(required(flags_.subgroup, "--subgroup"));
    if (!(doc_.group(s.group) == r.group))
      throw ValidationError("subgroup " + flags_.subgroup + " lies in a different group than the ring grading");
    return s.generators;
  }

  IntVector degree_for(const GradedPresentation& r) const {
    const std::string& text = required(flags_.degree, "--degree");
    auto it = doc_.elements.find(text);
    IntVector v;
    if (it != doc_.elements.end()) {
      v = it->second.coords;
    } else {
      std::string t = text;
      for (char& c : t)
        if (c == ',') c = ' ';
      std::istringstream in(t);
      std::string w;
      while (in >> w) {
        Integer z;
        if (z.set_str(w[0] == '+' ? w.substr(1) : w, 10) != 0)
          throw ValidationError("--degree must name an element or list integers, got '" + text + "'");
        v.push_back(z);
      }
    }
    r.group.check_length(v);
    return r.group.reduce(v);
  }

  std::optional<int> cap_for(const GradedPresentation& r) const {
    if (is_pointed(r.grading())) return std::nullopt;
    return flags_.cap;
  }

  PullbackOptions pullback_options() const {
    PullbackOptions o;
    o.degree_bound = flags_.bound;
    o.hilbert_cap = flags_.cap;
    return o;
  }

  CommandResult snf() {
    no_args("snf");
    IntMatrix m;
    std::string source;
    if (!flags_.hom.empty()) {
      m = doc_.hom(flags_.hom).hom.matrix();
      source = "hom " + flags_.hom;
    } else {
      const SubgroupDecl& s = doc_.subgroup(required(flags_.subgroup, "--hom or --subgroup"));
      m = IntMatrix::from_columns(s.generators, doc_.group(s.group).num_coords());
      source = "subgroup " + flags_.subgroup;
    }
    const SmithForm f = smith_normal_form(m);
    if (!(f.U * m * f.V == f.S)) throw ValidationError("internal error: Smith form does not verify");
    IntVector inv;
    for (std::size_t i = 0; i < f.rank; ++i) inv.push_back(f.invariant(i));
    IntVector torsion;
    for (const Integer& d : inv)
      if (d != 1) torsion.push_back(d);
    const AbelianGroup coker(m.rows() - f.rank, torsion);
    std::ostringstream out;
    out << source << " (" << m.rows() << "x" << m.cols() << ")\nrank " << f.rank << "\ninvariants";
    for (const Integer& d : inv) out << " " << d;
    out << "\ncokernel " << coker.str() << "\nU\n" << matrix_text(f.U) << "V\n" << matrix_text(f.V);
    ordered_json j = {{"rows", m.rows()},        {"cols", m.cols()},        {"rank", f.rank},
                      {"invariants", to_json(inv)}, {"cokernel", to_json(coker)}, {"U", to_json(f.U)},
                      {"V", to_json(f.V)}};
    return emit(j, out.str());
  }

  CommandResult kernel() {
    no_args("kernel");
    const GroupHom& h = doc_.hom(required(flags_.hom, "--hom")).hom;
    const KernelResult k = hom_kernel(h);
    std::ostringstream out;
    out << "kernel " << k.group.str() << "\ninclusion\n" << matrix_text(k.inclusion.matrix());
    return emit({{"group", to_json(k.group)}, {"inclusion", to_json(k.inclusion.matrix())}}, out.str());
  }

  CommandResult fiber() {
    no_args("fiber");
    const GradedPresentation& r = ring();
    const IntVector d = degree_for(r);
    const std::vector<Exponent> pts = fiber_points(r.grading(), d, cap_for(r));
    const GradedPiece piece = graded_piece(r, d, cap_for(r));
    std::ostringstream out;
    out << "degree " << vec_text(d) << "\nmonomials " << pts.size() << "\n"
        << monomials_text(pts, r.names) << "dimension " << piece.dimension << "\nstandard monomials\n"
        << monomials_text(piece.standard_monomials, r.names);
    ordered_json j = {{"degree", to_json(d)},
                      {"monomials", monomials_json(pts, r.names)},
                      {"dimension", piece.dimension},
                      {"standard_monomials", monomials_json(piece.standard_monomials, r.names)}};
    return emit(j, out.str());
  }

  CommandResult hilbert() {
    no_args("hilbert");
    const GradedPresentation& r = ring();
    const std::vector<Exponent> basis = hilbert_basis(FiberMonoid{r.grading(), subgroup_for(r)}, flags_.cap);
    std::ostringstream out;
    out << "hilbert basis " << basis.size() << "\n" << monomials_text(basis, r.names);
    return emit({{"basis", monomials_json(basis, r.names)}}, out.str());
  }

  CommandResult veronese() {
    no_args("veronese");
    const GradedPresentation& r = ring();
    const PullbackResult pr = veronese_subalgebra(r, subgroup_for(r), pullback_options());
    return emit(pullback_json(pr), pullback_text(pr));
  }

  CommandResult pullback() {
    no_args("pullback");
    const GradedPresentation& r = ring();
    const HomDecl& h = doc_.hom(required(flags_.hom, "--hom"));
    const PullbackResult pr = pullback_general(r, h.hom, pullback_options());
    return emit(pullback_json(pr), pullback_text(pr));
  }

  CommandResult minimize() {
    no_args("minimize");
    const GradedPresentation& r = ring();
    const PullbackResult pr = flags_.subgroup.empty() ? identity_pullback(r, flags_.bound)
                                                      : veronese_subalgebra(r, subgroup_for(r), pullback_options());
    const PullbackResult m = minimize_generators(pr);
    return emit(pullback_json(m), pullback_text(m));
  }

  const ActionDecl& action_decl() const { return doc_.action(required(flags_.action, "--action")); }

  const GradedPresentation& action_ring() const {
    const ActionDecl& a = action_decl();
    if (!flags_.ring.empty() && flags_.ring != a.ring)
      throw ValidationError("action " + flags_.action + " acts on ring " + a.ring + ", not " + flags_.ring);
    return doc_.ring(a.ring).ring;
  }

  CommandResult check_action_cmd() {
    no_args("check-action");
    const ActionReport rep = check_action(action_ring(), action_decl().action);
    std::ostringstream out;
    ordered_json checks = ordered_json::array();
    for (const ActionCheck& c : rep.checks) {
      out << (c.passed ? "ok   " : "FAIL ") << c.name;
      if (!c.witness.empty()) out << ": " << c.witness;
      out << "\n";
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
    }
    out << (rep.ok() ? "action is valid\n" : "action is invalid\n");
    return emit({{"valid", rep.ok()}, {"checks", checks}}, out.str(), rep.ok() ? 0 : 1);
  }

  DescentResult descend_with(const GradedPresentation& r, const SemilinearAction& a) const {
    DescentOptions o;
    o.degree_bound = flags_.bound;
    if (flags_.subgroup.empty()) return invariant_ring(r, a, o);
    return descend(veronese_subalgebra(r, subgroup_for(r), pullback_options()), a, o);
  }

  CommandResult descend_cmd() {
    no_args("descend");
    const GradedPresentation& r = action_ring();
    const DescentResult d = descend_with(r, action_decl().action);
    return emit(descent_json(d, r), descent_text(d, r));
  }

  CommandResult twist() {
    no_args("twist");
    const CocycleDecl& c = doc_.cocycle(required(flags_.cocycle, "--cocycle"));
    if (flags_.action.empty()) flags_.action = c.action;
    if (c.action != flags_.action)
      throw ValidationError("cocycle " + flags_.cocycle + " belongs to action " + c.action);
    const GradedPresentation& r = action_ring();
    const ActionDecl& a = action_decl();
    if (auto bad = cocycle_violation(r.group, a.action, c.cocycle)) throw ValidationError("not a cocycle: " + *bad);
    const SemilinearAction t = twist_action(r, a.action, c.cocycle);
    const DescentResult d = descend_with(r, t);
    std::ostringstream out;
    out << "twisted multipliers\n";
    ordered_json gens = ordered_json::array();
    for (std::size_t j = 0; j < t.generators.size(); ++j) {
      ordered_json mult = ordered_json::array();
      out << "  " << a.generator_names[j] << ":";
      for (std::size_t i = 0; i < t.generators[j].multipliers.size(); ++i) {
        const Scalar& m = t.generators[j].multipliers[i];
        out << " " << r.names[i] << "->" << m.str();
        mult.push_back(to_json(m));
      }
      out << "\n";
      gens.push_back({{"name", a.generator_names[j]}, {"multipliers", mult}});
    }
    out << descent_text(d, r);
    return emit({{"twisted", gens}, {"descent", descent_json(d, r)}}, out.str());
  }

  CommandResult cocycle_cmd() {
    if (args_.size() != 4) throw ValidationError("cocycle-from-n expects four numbers n1 n2 n3 n4");
    std::array<Rational, 4> n;
    for (std::size_t k = 0; k < 4; ++k) n[k] = parse_rational(args_[k]);
    const GradedPresentation r = flags_.ring.empty() ? fixtures::chatelet_ring() : ring();
    const auto s = cocycle_from_n(n, r);
    std::ostringstream out;
    if (!s) {
      out << "absent: " << Rational(n[0] * n[1] * n[2] * n[3]).get_str() << " is not a sum of two rational squares\n";
      return emit({{"exists", false}}, out.str());
    }
    ordered_json values = ordered_json::array();
    out << "cocycle on the basis of " << r.group.str() << "\n  c:";
    for (const Scalar& v : s->values[0]) {
      out << " " << v.str();
      values.push_back(to_json(v));
    }
    out << "\nn_{i,j}\n";
    ordered_json nij = ordered_json::array();
    for (int i = 1; i <= 4; ++i) {
      out << " ";
      ordered_json row = ordered_json::array();
      for (int j = 1; j <= 4; ++j) {
        const Scalar v = chatelet_n(*s, r, i, j);
        out << " " << v.str();
        row.push_back(to_json(v));
      }
      out << "\n";
      nij.push_back(row);
    }
    return emit({{"exists", true}, {"values", values}, {"n", nij}}, out.str());
  }

  CommandResult two_squares() {
    if (args_.size() != 1) throw ValidationError("two-squares expects one rational number");
    const Rational q = parse_rational(args_[0]);
    const auto w = sum_of_two_squares(q);
    if (!w) return emit({{"value", q.get_str()}, {"exists", false}}, q.get_str() + " is not a sum of two squares\n");
    Rational a = abs(w->first), b = abs(w->second);
    if (b < a) std::swap(a, b);
    if (a * a + b * b != q) throw ValidationError("internal error: two-squares witness does not verify");
    const std::string text = q.get_str() + " = " + rational_square(a) + " + " + rational_square(b) + "\n";
    return emit({{"value", q.get_str()}, {"exists", true}, {"a", a.get_str()}, {"b", b.get_str()}}, text);
  }

  CommandResult irrelevant() {
    no_args("irrelevant");
    const GradedPresentation& r = ring();
    const IntVector d = degree_for(r);
    const std::vector<Exponent> gens = irrelevant_ideal(r, d, cap_for(r));
    std::ostringstream out;
    out << "irrelevant ideal in degree " << vec_text(d) << ": " << gens.size() << " generators\n"
        << monomials_text(gens, r.names);
    return emit({{"degree", to_json(d)}, {"generators", monomials_json(gens, r.names)}}, out.str());
  }

  CommandResult generated() {
    no_args("generated-in-degree");
    const GradedPresentation& r = ring();
    const IntVector d = degree_for(r);
    const GenerationReport rep = generated_in_degree(r, d, flags_.steps, cap_for(r));
    std::ostringstream out;
    ordered_json steps = ordered_json::array();
    for (const GenerationStep& s : rep.steps) {
      out << "  k=" << s.k << " dim R_kd " << s.target_dimension << ", image of Sym^k R_d " << s.image_dimension << "\n";
      steps.push_back({{"k", s.k}, {"target_dimension", s.target_dimension}, {"image_dimension", s.image_dimension}});
    }
    out << (rep.generated ? "generated in degree " : "not generated in degree ") << vec_text(d) << "\n";
    return emit({{"degree", to_json(d)}, {"generated", rep.generated}, {"steps", steps}}, out.str(),
                rep.generated ? 0 : 1);
  }

  CommandResult check_relations() {
    no_args("check-relations");
    const GradedPresentation& r = ring();
    if (flags_.polys.empty()) throw ValidationError("missing --poly");
    std::ostringstream out;
    ordered_json results = ordered_json::array();
    bool all = true;
    for (const std::string& text : flags_.polys) {
      const Polynomial f = parse_polynomial(text, r.names, r.field);
      const MembershipResult m = ideal_member(r, f, cap_for(r));
      const bool verified = m.member && verify_certificate(r, f, m.certificate);
      all = all && verified;
      out << (verified ? "member     " : "not member ") << f.str(r.names) << "  degree " << vec_text(m.degree) << "\n";
      ordered_json cert = ordered_json::array();
      for (const CertificateTerm& t : m.certificate) {
        out << "    + " << t.coefficient.str() << " * " << monomial_string(t.multiplier, r.names) << " * rel"
            << t.relation + 1 << "\n";
        cert.push_back({{"relation", t.relation},
                        {"multiplier", monomial_string(t.multiplier, r.names)},
                        {"coefficient", to_json(t.coefficient)}});
      }
      results.push_back({{"polynomial", to_json(f, r.names)},
                         {"degree", to_json(m.degree)},
                         {"member", verified},
                         {"certificate", cert}});
    }
    return emit({{"results", results}}, out.str(), all ? 0 : 1);
  }

  CommandResult param_check() {
    no_args("param-check");
    const ParamScheme& ps = doc_.scheme(required(flags_.scheme, "--scheme")).scheme;
    const std::vector<IntTuple> tuples = param_enumerate(ps, flags_.height);
    const ProjectionReport rep = param_project_and_verify(ps, tuples);
    const auto& names = ps.presentation.names;
    std::ostringstream out;
    out << "scheme " << flags_.scheme << ", parameter height " << flags_.height << "\n";
    ordered_json records = ordered_json::array();
    for (const ProjectedTuple& t : rep.entries) {
      out << "  (";
      ordered_json tuple = ordered_json::array();
      for (std::size_t i = 0; i < t.tuple.size(); ++i) {
        out << (i ? ", " : "") << names[i] << "=" << t.tuple[i];
        tuple.push_back(t.tuple[i]);
      }
      out << ") -> " << point_text(t.point) << (t.on_surface ? "" : "  NOT ON SURFACE") << "\n";
      ordered_json point = ordered_json::array();
      for (const Integer& z : t.point) point.push_back(to_json(z));
      records.push_back({{"tuple", tuple}, {"point", point}, {"on_surface", t.on_surface}});
    }
    out << "tuples " << rep.entries.size() << ", distinct points " << rep.points.size() << ", violations "
        << rep.violations << "\n";
    ordered_json j = {{"height", flags_.height},
                      {"tuples", rep.entries.size()},
                      {"distinct_points", rep.points.size()},
                      {"violations", rep.violations},
                      {"records", records}};
    bool ok = rep.violations == 0;
    if (flags_.coverage) {
      const CoverageReport c = coverage_check(ps, *flags_.coverage);
      out << "coverage: " << c.surface.size() << " surface points of height <= " << *flags_.coverage << ", "
          << c.uncovered.size() << " uncovered at parameter height " << c.parameter_height << "\n";
      for (const auto& p : c.uncovered) out << "  uncovered " << point_text(p) << "\n";
      ordered_json unc = ordered_json::array();
      for (const auto& p : c.uncovered) {
        ordered_json q = ordered_json::array();
        for (const Integer& z : p) q.push_back(to_json(z));
        unc.push_back(q);
      }
      j["coverage"] = {{"surface_height", *flags_.coverage},
                       {"surface_points", c.surface.size()},
                       {"parameter_height", c.parameter_height},
                       {"uncovered", unc}};
      ok = ok && c.covered();
    }
    return emit(j, out.str(), ok ? 0 : 1);
  }

  const Document& doc_;
  Flags flags_;
  std::vector<std::string> args_;
};

}  // namespace detail

/// Runs one command.  Exit code 0 on success, 1 on validation or check
/// failure, 2 when a computation hits a configured bound.
inline CommandResult run_command(const std::string& cmd, const Document& doc, const Flags& flags,
                                 const std::vector<std::string>& args = {}) {
  try {
    return detail::Runner(doc, flags, args).run(cmd);
  } catch (const BoundExceeded& e) {
    return {2, std::string("error: bound exceeded: ") + e.what() + "\n"};
  } catch (const Error& e) {
    return {1, std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace coxring
