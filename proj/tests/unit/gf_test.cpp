#include <gtest/gtest.h>

#include <stdexcept>

#include "gridclass/compile.hpp"
#include "gridclass/gf.hpp"
#include "gridclass/sentences.hpp"
#include "random_formula.hpp"
#include "suite.hpp"

using namespace gridclass;

namespace {

Polynomial poly(std::vector<int> c) {
  std::vector<BigInt> big(c.begin(), c.end());
  return Polynomial(big);
}

}  // namespace

TEST(Polynomial, Arithmetic) {
  const auto a = poly({1, -1}), b = poly({1, 1});
  EXPECT_EQ(a * b, poly({1, 0, -1}));
  EXPECT_EQ(a + b, poly({2}));
  EXPECT_EQ(a - a, Polynomial{});
  EXPECT_EQ((a * b).divide_exact(b), a);
  EXPECT_THROW(poly({1, 0, 1}).divide_exact(a), std::domain_error);
  EXPECT_EQ(poly({2, 4, 6}).content(), 2);
  EXPECT_EQ(poly({0, 0, 3}).degree(), 2);
  EXPECT_EQ(Polynomial{}.degree(), -1);
}

TEST(Polynomial, Formatting) {
  EXPECT_EQ(poly({1, -2, 1}).to_string(), "1 - 2x + x^2");
  EXPECT_EQ(poly({0, -1}).to_string(), "-x");
  EXPECT_EQ(Polynomial{}.to_string(), "0");
}

TEST(Polynomial, Gcd) {
  const auto common = poly({1, -2});
  EXPECT_EQ(gcd(common * poly({1, 1}), common * poly({3, 0, 1})), poly({-1, 2}));
  EXPECT_EQ(gcd(poly({2}), poly({0, 1})), poly({1}));
}

TEST(RationalGF, ReducesAndNormalises) {
  const RationalGF g(poly({0, 1, -1}), poly({1, -2, 1}));  // x(1-x)/(1-x)^2
  EXPECT_EQ(g.numerator(), poly({0, 1}));
  EXPECT_EQ(g.denominator(), poly({1, -1}));
  EXPECT_EQ(g.to_string(), "x/(1 - x)");
  const RationalGF h(poly({0, -2}), poly({-2, 4}));
  EXPECT_EQ(h.to_string(), "x/(1 - 2x)");
  EXPECT_THROW(RationalGF(poly({1}), poly({0, 1})), std::domain_error);
}

TEST(RationalGF, Series) {
  const RationalGF g(poly({0, 1}), poly({1, -1, -1}));
  EXPECT_EQ(g.series(8), (std::vector<BigInt>{0, 1, 1, 2, 3, 5, 8, 13}));
  const RationalGF with_one(poly({1, 1}), poly({1, -1}));
  EXPECT_EQ(with_one.without_constant().series(3), (std::vector<BigInt>{0, 2, 2}));
}

TEST(TransferMatrix, MatchesWordCounts) {
  fixtures::RandomSentences gen(2, 77);
  for (int i = 0; i < 80; ++i) {
    const auto a = automata::compile(gen.next(4), 2);
    const auto counts = automata::count_sequence(a, 15);
    const auto series = transfer_matrix_gf(a, true).series(16);
    EXPECT_EQ(series, counts);
    const auto shifted = transfer_matrix_gf(a, false).series(16);
    EXPECT_EQ(shifted[0], 0);
    EXPECT_TRUE(std::equal(shifted.begin() + 1, shifted.end(), counts.begin() + 1));
  }
}

TEST(TransferMatrix, KnownLanguages) {
  const auto all = automata::compile(mso::top(), 3);
  EXPECT_EQ(transfer_matrix_gf(all, true).to_string(), "1/(1 - 3x)");
  const auto none = automata::compile(mso::bottom(), 3);
  EXPECT_EQ(transfer_matrix_gf(none, true).to_string(), "0");
  const auto nf = automata::compile(mso::trace_nf_sentence(fixtures::signed_matrix("1 0 / 0 1")), 2);
  // Commuting letters: one normal form per (count of each letter).
  EXPECT_EQ(transfer_matrix_gf(nf, false).series(5), (std::vector<BigInt>{0, 2, 3, 4, 5}));
}
