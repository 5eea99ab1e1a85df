#pragma once

#include <string>
#include <vector>

#include "coxring/document.hpp"
#include "coxring/fixtures.hpp"

namespace coxring {

/// Adds the declarations of `b` to `a`.  A name may repeat only for identical fields.
inline void merge_into(Document& a, const Document& b) {
  for (const auto& [k, v] : b.fields) {
    auto it = a.fields.find(k);
    if (it != a.fields.end() && !(*it->second == *v)) throw ValidationError("conflicting field '" + k + "'");
    a.fields.emplace(k, v);
  }
  auto add = [](auto& into, const auto& from, const char* kind) {
    for (const auto& [k, v] : from)
      if (!into.emplace(k, v).second) throw ValidationError(std::string("duplicate ") + kind + " '" + k + "'");
  };
  add(a.groups, b.groups, "group");
  add(a.rings, b.rings, "ring");
  add(a.subgroups, b.subgroups, "subgroup");
  add(a.homs, b.homs, "hom");
  add(a.elements, b.elements, "element");
  add(a.actions, b.actions, "action");
  add(a.cocycles, b.cocycles, "cocycle");
  add(a.schemes, b.schemes, "scheme");
}

namespace detail {

inline Document dp4_document() {
  using namespace fixtures;
  Document d;
  const GradedPresentation r = dp4_ring();
  const ParamScheme ps = dp4_scheme();
  d.fields["Qi"] = r.field;
  d.groups.emplace("dp4_pic", r.group);
  d.groups.emplace("dp4_pic_k", ps.presentation.group);
  d.rings.emplace("dp4", RingDecl{"dp4_pic", "Qi", r});
  d.rings.emplace("dp4_k", RingDecl{"dp4_pic_k", "Q", ps.presentation});
  d.subgroups.emplace("H", SubgroupDecl{"dp4_pic", dp4_subgroup()});
  d.elements.emplace("dp4_anticanonical", ElementDecl{"dp4_pic", dp4_anticanonical()});
  d.elements.emplace("dp4_ample", ElementDecl{"dp4_pic_k", dp4_ample_in_subgroup()});
  d.actions.emplace("dp4_conj", ActionDecl{"dp4", {"c"}, dp4_action(r), {false}});
  d.schemes.emplace("dp4", SchemeDecl{"dp4_k", ps});
  return d;
}

inline Document chatelet_document() {
  using namespace fixtures;
  Document d;
  const GradedPresentation r = chatelet_ring();
  const ParamScheme ps = chatelet_scheme();
  const SemilinearAction a = chatelet_action(r);
  d.fields["Qi"] = r.field;
  d.groups.emplace("chatelet_pic", r.group);
  d.groups.emplace("chatelet_pic_k", ps.presentation.group);
  d.rings.emplace("chatelet_bar", RingDecl{"chatelet_pic", "Qi", r});
  d.rings.emplace("chatelet", RingDecl{"chatelet_pic_k", "Q", ps.presentation});
  d.subgroups.emplace("chatelet_invariant", SubgroupDecl{"chatelet_pic", chatelet_invariant_subgroup()});
  d.actions.emplace("chatelet_conj", ActionDecl{"chatelet_bar", {"c"}, a, {false}});
  const auto s = cocycle_from_n({Rational(1), Rational(2), Rational(2), Rational(1)}, r);
  if (!s) throw ValidationError("bundled cocycle does not exist");
  d.cocycles.emplace("chatelet_n1221", CocycleDecl{"chatelet_conj", *s});
  d.schemes.emplace("chatelet", SchemeDecl{"chatelet", ps});
  return d;
}

inline Document p1xp1_document() {
  using namespace fixtures;
  Document d;
  const GradedPresentation r = p1xp1_ring();
  const GroupHom phi = p1xp1_antidiagonal();
  d.groups.emplace("p1xp1_pic", r.group);
  d.groups.emplace("p1xp1_line", phi.domain());
  d.rings.emplace("p1xp1", RingDecl{"p1xp1_pic", "Q", r});
  d.subgroups.emplace("p1xp1_diagonal", SubgroupDecl{"p1xp1_pic", {int_vector({1, 1})}});
  d.homs.emplace("antidiagonal", HomDecl{"p1xp1_line", "p1xp1_pic", phi});
  return d;
}

}  // namespace detail

inline std::vector<std::string> bundled_names() { return {"chatelet", "dp4", "p1xp1"}; }

inline Document bundled_document(const std::string& name) {
  if (name == "dp4") return detail::dp4_document();
  if (name == "chatelet") return detail::chatelet_document();
  if (name == "p1xp1") return detail::p1xp1_document();
  throw ValidationError("no bundled fixture named '" + name + "'");
}

/// All bundled fixtures in one document.
inline Document bundled_all() {
  Document d;
  for (const std::string& n : bundled_names()) merge_into(d, bundled_document(n));
  return d;
}

}  // namespace coxring
