#include <gtest/gtest.h>

#include "gridclass/errors.hpp"
#include "gridclass/formula.hpp"
#include "gridclass/sentences.hpp"
#include "suite.hpp"

using namespace gridclass;
using namespace gridclass::mso;

TEST(FormulaText, RoundTrips) {
  const char* texts[] = {
      "true",
      "(forall x (exists y (and (<1 x y) (not (<2 x y)))))",
      "(exists-set X (forall x (iff (in x X) (or (U 1 x) (C 2 x)))))",
      "(implies (= x y) (< x y))",
      "(forall-set X (and true false))",
  };
  for (const char* text : texts) {
    const auto f = parse_formula(text);
    EXPECT_TRUE(same_structure(parse_formula(to_text(f)), f)) << text;
  }
}

TEST(FormulaText, ReportsPositionOfErrors) {
  EXPECT_THROW(parse_formula("(and"), InputError);
  EXPECT_THROW(parse_formula("(U 0 x)"), InputError);
  EXPECT_THROW(parse_formula("(frob x)"), InputError);
  try {
    parse_formula("(and true\n  (<1 x))");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(FormulaText, CommentsIgnored) {
  EXPECT_TRUE(same_structure(parse_formula("; note\n(not (<1 x y)) ; done"), negate(lt1("x", "y"))));
}

TEST(FreeVariables, InOrderWithInferredSorts) {
  const auto f = parse_formula("(and (in y Z) (exists x (<1 x y)) (<2 w x))");
  const std::vector<FreeVariable> expected{{"y", Sort::element}, {"Z", Sort::set}, {"w", Sort::element},
                                           {"x", Sort::element}};
  EXPECT_EQ(free_variables(f), expected);
  EXPECT_TRUE(free_variables(geom_sentence(fixtures::signed_matrix("1 -1"))).empty());
}

TEST(Renaming, AvoidsCapture) {
  const auto f = parse_formula("(exists y (<1 x y))");
  const auto g = rename_free(f, {{"x", "y"}});
  const auto fv = free_variables(g);
  ASSERT_EQ(fv.size(), 1u);
  EXPECT_EQ(fv[0].name, "y");
  EXPECT_NE(g->variable(), "y");
  EXPECT_TRUE(same_structure(rename_free(f, {}), f));
}

TEST(Signatures, AdmitOnlyTheirAtoms) {
  const auto words = Signature::words(2);
  EXPECT_TRUE(words.admits(parse_formula("(forall x (or (U 1 x) (U 2 x)))")));
  EXPECT_FALSE(words.admits(parse_formula("(U 3 x)")));
  EXPECT_FALSE(words.admits(parse_formula("(<1 x y)")));
  EXPECT_THROW(Signature::permutations().check(parse_formula("(C 1 x)")), SignatureError);
  EXPECT_TRUE(Signature::gridded_permutations(2).admits(parse_formula("(and (C 2 x) (<2 x y))")));
}

TEST(Sizes, CountSharedSubtreesPerOccurrence) {
  const auto atom = lt1("x", "y");
  EXPECT_EQ(tree_size(atom), 1u);
  EXPECT_EQ(tree_size(conj({atom, atom})), 3u);
  EXPECT_EQ(tree_size(exists("x", atom)), 2u);
}

TEST(Constructors, DerivedForms) {
  EXPECT_EQ(numbered("Y", 3), (std::vector<std::string>{"Y1", "Y2", "Y3"}));
  EXPECT_EQ(exists_many({"a", "b"}, top())->kind(), Kind::exists);
  EXPECT_EQ(forall_set("X", top())->sort(), Sort::set);
  EXPECT_TRUE(free_variables(exists_unique("x", lt1("x", "y"))).size() == 1);
}
