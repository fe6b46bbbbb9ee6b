#include <gtest/gtest.h>

#include <random>

#include "gridclass/analysis.hpp"
#include "gridclass/oracle.hpp"
#include "gridclass/sentences.hpp"
#include "gridclass/structure.hpp"
#include "suite.hpp"

using namespace gridclass;
using namespace gridclass::mso;
using fixtures::perm;
using fixtures::signed_matrix;

namespace {

bool holds_on_word(const SignedGridMatrix& s, const FormulaPtr& word_formula, const Word& w) {
  return model_check(FiniteStructure::from_word(w, s.alphabet_size()), word_formula);
}

}  // namespace

TEST(GeomSentence, DefinesTheClass) {
  for (const auto& text : fixtures::small_suite()) {
    const auto s = signed_matrix(text);
    const auto geom = geom_sentence(s);
    for (std::size_t n = 0; n <= 5; ++n) {
      const auto members = oracle::brute_members(s, n);
      for (const auto& p : all_permutations(n))
        EXPECT_EQ(model_check(p, geom), members.contains(p)) << text << " " << p.to_string();
    }
  }
}

TEST(GeomSentence, EightCellMatrixOnShortPermutations) {
  const auto s = signed_matrix("1 1 / 1 -1");
  const auto geom = geom_sentence(s);
  for (std::size_t n = 0; n <= 4; ++n) {
    const auto members = oracle::brute_members(s, n);
    for (const auto& p : all_permutations(n)) EXPECT_EQ(model_check(p, geom), members.contains(p)) << p.to_string();
  }
}

TEST(MinSentence, PicksTheLeastGridding) {
  for (const auto& text : fixtures::small_suite()) {
    const auto s = signed_matrix(text);
    const auto min = min_sentence(s);
    for (std::size_t n = 1; n <= 4; ++n) {
      for (const auto& p : oracle::brute_members(s, n)) {
        const auto least = oracle::brute_minimal_gridding(s, p);
        for (const auto& g : oracle::brute_griddings(s, p))
          EXPECT_EQ(model_check(FiniteStructure::from_gridded(g, s.alphabet_size()), min), g == least)
              << text << " " << p.to_string();
      }
    }
  }
}

TEST(Indecomposability, MatchesDefinitions) {
  const auto sum = sum_ind(), skew = skew_ind(), simple = simple_sentence();
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& p : all_permutations(n)) {
      bool sum_split = false, skew_split = false;
      for (std::size_t k = 1; k < n; ++k) {
        int lo_max = 0, lo_min = static_cast<int>(n) + 1;
        for (std::size_t i = 0; i < k; ++i) lo_max = std::max(lo_max, p[i]), lo_min = std::min(lo_min, p[i]);
        sum_split = sum_split || lo_max == static_cast<int>(k);
        skew_split = skew_split || lo_min == static_cast<int>(n - k) + 1;
      }
      EXPECT_EQ(model_check(p, sum), !sum_split) << p.to_string();
      EXPECT_EQ(model_check(p, skew), !skew_split) << p.to_string();
      EXPECT_EQ(model_check(p, simple), oracle::interval_free(p)) << p.to_string();
    }
  }
}

TEST(PatternSentences, MatchContainment) {
  const auto patterns = fixtures::perms("21; 132; 2413");
  for (const auto& q : patterns) {
    const auto f = contains_copy(q);
    for (std::size_t n = 0; n <= 5; ++n)
      for (const auto& p : all_permutations(n)) EXPECT_EQ(model_check(p, f), oracle::occurs_in(q, p));
  }
  const auto avoid = avoids_all(fixtures::perms("123; 321"));
  EXPECT_TRUE(model_check(perm("2413"), avoid));
  EXPECT_FALSE(model_check(perm("1423"), avoid));
}

TEST(BasisSentences, AcceptOnlyCompleteCandidateSets) {
  const auto s = signed_matrix("1");
  const auto right = basis_sentence(fixtures::perms("21"), s);
  const auto wrong = basis_sentence(fixtures::perms("321"), s);
  for (std::size_t n = 0; n <= 4; ++n)
    for (const auto& p : all_permutations(n)) EXPECT_TRUE(model_check(p, right)) << p.to_string();
  EXPECT_FALSE(model_check(perm("21"), wrong));
  EXPECT_FALSE(model_check(perm("2413"), simple_basis_sentence({}, s)));
  EXPECT_TRUE(model_check(perm("132"), simple_basis_sentence({}, s)));
}

TEST(BasisPSentence, SelectsBasisElements) {
  for (const auto& text : {"1", "1 -1"}) {
    const auto s = signed_matrix(text);
    const auto f = basis_p_sentence(s);
    const auto basis = oracle::brute_basis(s, 4);
    for (std::size_t n = 0; n <= 4; ++n)
      for (const auto& p : all_permutations(n))
        EXPECT_EQ(model_check(p, f), std::find(basis.begin(), basis.end(), p) != basis.end()) << p.to_string();
  }
}

TEST(Relativize, RestrictsElementQuantifiers) {
  const auto f = relativize(parse_formula("(forall x (<1 x y))"), "S");
  const auto st = FiniteStructure::from_permutation(perm("123"));
  EXPECT_TRUE(model_check(st, f, {{"y", std::size_t{2}}, {"S", std::vector<std::size_t>{0, 1}}}));
  EXPECT_FALSE(model_check(st, f, {{"y", std::size_t{2}}, {"S", std::vector<std::size_t>{0, 2}}}));
}

TEST(Interpretation, WordsSatisfyWhatTheirImagesSatisfy) {
  std::mt19937 rng(5);
  const std::vector<FormulaPtr> sentences{contains_copy(perm("21")), contains_copy(perm("231")), sum_ind(), skew_ind(),
                                          simple_sentence()};
  for (const auto& text : fixtures::suite()) {
    const auto s = signed_matrix(text);
    for (const auto& f : sentences) {
      const auto words = interpret(f, s);
      EXPECT_TRUE(Signature::words(s.alphabet_size()).admits(words));
      for (int trial = 0; trial < 15; ++trial) {
        Word w(rng() % 6);
        for (auto& letter : w) letter = static_cast<CellIndex>(rng() % s.alphabet_size());
        EXPECT_EQ(holds_on_word(s, words, w), model_check(apply_word(s, w), f)) << text << " " << to_text(f);
      }
    }
  }
}

TEST(Interpretation, GriddedSentencesReadTheLetters) {
  const auto s = signed_matrix("1 -1");
  const auto words = interpret(parse_formula("(exists x (C 2 x))"), s);
  EXPECT_TRUE(holds_on_word(s, words, {0, 1}));
  EXPECT_FALSE(holds_on_word(s, words, {0, 0}));
  EXPECT_THROW(interpret(parse_formula("(U 1 x)"), s), SignatureError);
  Budget tiny;
  tiny.max_formula_nodes = 10;
  EXPECT_THROW(interpret(geom_sentence(s), s, tiny), BudgetExceeded);
}

TEST(TraceNormalForm, OneWordPerTrace) {
  const auto s = signed_matrix("1 0 / 0 1");
  const auto nf = trace_nf_sentence(s);
  std::set<GriddedPermutation> seen;
  std::size_t accepted = 0;
  for (const auto& w : fixtures::all_words(2, 4)) {
    if (!holds_on_word(s, nf, w)) continue;
    ++accepted;
    seen.insert(apply_word_gridded(s, w));
  }
  EXPECT_EQ(accepted, seen.size());
  EXPECT_EQ(seen.size(), oracle::brute_gridded(s, 4).size());
}
