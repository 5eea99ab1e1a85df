#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "coxring/bundled.hpp"
#include "coxring/document.hpp"

using namespace coxring;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Line and column of the ParseError raised by `text`, or (0, 0).
std::pair<int, int> error_position(const std::string& text, std::string* message = nullptr) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    if (message) *message = e.what();
    return {e.line(), e.column()};
  }
  return {0, 0};
}

const char* kFeatureDoc = R"(coxdoc 1
# every declaration kind, a depth-2 tower and torsion
field K
  root i^2 = -1
  root s^2 = 2   # sqrt 2 over Q(i)
end

group M free 2 torsion 2
group L free 1

ring R graded by M over K
  var x : 1 0 0
  var y : 1 0 1
  var z : 2 0 1
  rel (1+s)*x*y - (1/2*i)*z
end

subgroup S in M
  gen 2 0 0
  gen 0 1 1
end

hom f : L -> M
  row 1
  row 0
  row 1
end

element e in M : 3 1 1

action A on R
  generator g order 2 conj 1
    perm x y z
    scale z -1
    grading 1 0 0
    grading 0 1 0
    grading 0 0 1
  end
end

cocycle C for A
  value g : 1 (1+i) -1
end
)";

}  // namespace

TEST(Document, BundledFixturesRoundTrip) {
  for (const std::string& name : bundled_names()) {
    const Document d = bundled_document(name);
    const std::string text = serialize_document(d);
    const Document back = parse_document(text);
    EXPECT_TRUE(back == d) << name;
    EXPECT_EQ(serialize_document(back), text) << name;
  }
}

TEST(Document, ShippedFilesMatchBundled) {
  for (const std::string& name : bundled_names()) {
    const std::string text = read_file(std::string(COXRING_FIXTURE_DIR) + "/" + name + ".cox");
    ASSERT_FALSE(text.empty()) << name;
    EXPECT_TRUE(parse_document(text) == bundled_document(name)) << name;
    EXPECT_EQ(text, serialize_document(bundled_document(name))) << name;
  }
}

TEST(Document, Dp4FixtureShape) {
  const Document d = parse_document(read_file(std::string(COXRING_FIXTURE_DIR) + "/dp4.cox"));
  const GradedPresentation& r = d.ring("dp4").ring;
  EXPECT_EQ(r.num_variables(), 9u);
  EXPECT_EQ(r.relations.size(), 1u);
  EXPECT_EQ(r.field->depth(), 1u);
  EXPECT_EQ(d.subgroup("H").generators.size(), 4u);
  EXPECT_EQ(d.subgroup("H").group, "dp4_pic");
  EXPECT_EQ(d.scheme("dp4").scheme.coprime.size(), 4u);
}

TEST(Document, MergedBundleKeepsEverything) {
  const Document all = bundled_all();
  std::size_t rings = 0;
  for (const std::string& n : bundled_names()) rings += bundled_document(n).rings.size();
  EXPECT_EQ(all.rings.size(), rings);
  EXPECT_EQ(all.fields.size(), 1u);
  EXPECT_TRUE(parse_document(serialize_document(all)) == all);
}

TEST(Document, EmptyDocument) {
  for (const char* text : {"", "coxdoc 1\n", "# nothing\n\ncoxdoc 1\n"}) {
    const Document d = parse_document(text);
    EXPECT_TRUE(d.fields.empty() && d.groups.empty() && d.rings.empty() && d.subgroups.empty() && d.homs.empty() &&
                d.elements.empty() && d.actions.empty() && d.cocycles.empty() && d.schemes.empty());
    EXPECT_EQ(serialize_document(d), "coxdoc 1\n");
  }
}

TEST(Document, FeatureDocumentRoundTrip) {
  const Document d = parse_document(kFeatureDoc);
  EXPECT_EQ(d.field("K")->depth(), 2u);
  EXPECT_EQ(d.group("M").torsion_orders(), int_vector({2}));
  EXPECT_EQ(d.subgroup("S").generators[0], int_vector({2, 0, 0}));
  EXPECT_EQ(d.hom("f").hom.matrix(), IntMatrix::from_rows({int_vector({1}), int_vector({0}), int_vector({1})}));
  const GaloisGenerator& g = d.action("A").action.generators[0];
  EXPECT_EQ(g.field_mask, 1u);
  EXPECT_EQ(g.multipliers[2], Scalar(-1));
  EXPECT_TRUE(d.action("A").explicit_grading[0]);
  const TowerPtr k = d.field("K");
  const Scalar i = TowerElement::root(k, 1);
  const Scalar s = TowerElement::root(k, 2);
  EXPECT_EQ(d.cocycle("C").cocycle.values[0][1], Scalar(1) + i);
  const GradedPresentation& r = d.ring("R").ring;
  const Polynomial expected = (Scalar(1) + s) * r.var(0) * r.var(1) - (Scalar(Rational(1, 2)) * i) * r.var(2);
  EXPECT_EQ(r.relations[0], expected);

  const std::string text = serialize_document(d);
  const Document back = parse_document(text);
  EXPECT_TRUE(back == d);
  EXPECT_EQ(serialize_document(back), text);
}

TEST(Document, StructuralEqualityDetectsChanges) {
  const Document d = parse_document(kFeatureDoc);
  Document e = d;
  e.elements["e"].coords = int_vector({3, 1, 0});
  EXPECT_FALSE(e == d);
  e = d;
  e.rings["R"].ring.relations[0] = Scalar(2) * e.rings["R"].ring.relations[0];
  EXPECT_FALSE(e == d);
  e = d;
  e.cocycles["C"].cocycle.values[0][0] = Scalar(-1);
  EXPECT_FALSE(e == d);
}

TEST(Document, RandomTowerPolynomialsRoundTrip) {
  const Document base = parse_document(kFeatureDoc);
  const TowerPtr k = base.field("K");
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Document d = base;
    GradedPresentation& r = d.rings["R"].ring;
    // Random combination of the homogeneous monomials x*y and z of degree (2,0,1).
    Polynomial f(3);
    for (const Exponent& e : {Exponent{1, 1, 0}, Exponent{0, 0, 1}}) {
      detail::Coeffs c(4);
      for (Rational& q : c) q = Rational(static_cast<int>(rng() % 9) - 4, static_cast<int>(rng() % 3) + 1);
      f.add_term(e, TowerElement(k, c));
    }
    if (f.is_zero()) continue;
    r.relations = {f};
    const Document back = parse_document(serialize_document(d));
    EXPECT_TRUE(back == d) << f.str(r.names);
  }
}

TEST(Document, HomogeneityErrorNamesBothDegrees) {
  const std::string text =
      "coxdoc 1\n"
      "group G free 2\n"
      "ring R graded by G\n"
      "  var x1 : 1 0\n"
      "  var x2 : 0 1\n"
      "  rel x1 + x2\n"
      "end\n";
  std::string msg;
  const auto [line, col] = error_position(text, &msg);
  EXPECT_EQ(line, 6);
  EXPECT_EQ(col, 7);
  EXPECT_NE(msg.find("not homogeneous"), std::string::npos) << msg;
  EXPECT_NE(msg.find("(1,0)"), std::string::npos) << msg;
  EXPECT_NE(msg.find("(0,1)"), std::string::npos) << msg;
}

TEST(Document, ErrorsCarryPositions) {
  EXPECT_EQ(error_position("coxdoc 2\n"), std::make_pair(1, 8));
  EXPECT_EQ(error_position("group G free 1\n"), std::make_pair(1, 1));
  EXPECT_EQ(error_position("coxdoc 1\nwidget w\n"), std::make_pair(2, 1));
  EXPECT_EQ(error_position("coxdoc 1\nring R graded by G\nend\n"), std::make_pair(2, 18));
  EXPECT_EQ(error_position("coxdoc 1\ngroup G free 2\nring R graded by G\n  var x : 1 0\n"), std::make_pair(3, 1));
  EXPECT_EQ(error_position("coxdoc 1\ngroup G free 2\nelement e in G : 1 2 3\n"), std::make_pair(3, 18));
  EXPECT_EQ(error_position("coxdoc 1\ngroup G free 2\ngroup G free 1\n"), std::make_pair(3, 7));
  EXPECT_EQ(error_position("coxdoc 1\ngroup G free 1\nring R graded by G\n  var x : 1\n  rel x + * x\nend\n").first, 5);
  EXPECT_EQ(error_position("coxdoc 1\ngroup G free 1\nring R graded by G\n  var x : 1\n  rel x + y\nend\n").first, 5);
  EXPECT_EQ(error_position("coxdoc 1\nfield K\n  root i^2 = 4\nend\n"), std::make_pair(3, 14));
  EXPECT_EQ(error_position("coxdoc 1\nfield Q\nend\n"), std::make_pair(2, 7));
  EXPECT_EQ(error_position("coxdoc 1\ngroup G free 1 torsion 1\n").first, 2);
  EXPECT_EQ(error_position("coxdoc 1\nelement e in (G : 1\n").first, 2);
}

TEST(Document, UnresolvedReferences) {
  const std::string ring = "coxdoc 1\ngroup G free 1\nring R graded by G\n  var x : 1\n  var y : 1\nend\n";
  EXPECT_EQ(error_position(ring + "action A on S\nend\n"), std::make_pair(7, 13));
  EXPECT_EQ(error_position(ring + "cocycle C for A\nend\n"), std::make_pair(7, 15));
  EXPECT_EQ(error_position(ring + "action A on R\n  generator g order 2\n    perm x w\n  end\nend\n"), std::make_pair(9, 12));
  EXPECT_EQ(error_position(ring + "subgroup S in H\nend\n"), std::make_pair(7, 15));
  EXPECT_EQ(error_position(ring + "ring T graded by G over K\nend\n"), std::make_pair(7, 25));
  // Missing cocycle value line for a group generator.
  EXPECT_EQ(error_position(ring + "action A on R\n  generator g order 2\n    perm y x\n  end\nend\ncocycle C for A\nend\n"),
            std::make_pair(12, 1));
}

TEST(Document, LookupOfMissingNamesThrows) {
  const Document d;
  EXPECT_THROW(d.ring("nope"), ValidationError);
  EXPECT_THROW(d.field("nope"), ValidationError);
  EXPECT_EQ(d.field("Q")->depth(), 0u);
}
