#include <gtest/gtest.h>

#include <random>

#include "gridclass/errors.hpp"
#include "gridclass/grid.hpp"
#include "gridclass/oracle.hpp"
#include "suite.hpp"

using namespace gridclass;
using fixtures::perm;
using fixtures::signed_matrix;

TEST(GridMatrix, InlineRowsAreTopDown) {
  const auto m = parse_matrix_inline("1 0 / 0 -1");
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.at(0, 1), 1);   // top-left
  EXPECT_EQ(m.at(1, 0), -1);  // bottom-right
  EXPECT_EQ(m.to_inline_string(), "1 0 / 0 -1");
  EXPECT_EQ(m.nonzero_count(), 2u);
  EXPECT_EQ(m, GridMatrix::from_rows_top_down({{1, 0}, {0, -1}}));
}

TEST(GridMatrix, FileFormatSkipsCommentsAndBlankLines) {
  const auto m = parse_matrix_text("# a comment\n1 1\n\n1 -1   # trailing\n");
  EXPECT_EQ(m, parse_matrix_inline("1 1 / 1 -1"));
}

TEST(GridMatrix, RejectsMalformedInput) {
  EXPECT_THROW(parse_matrix_inline("1 2"), InputError);
  EXPECT_THROW(parse_matrix_inline("1 0 / 1"), InputError);
  EXPECT_THROW(parse_matrix_inline(""), InputError);
  try {
    parse_matrix_text("1 0\n0 x\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(Signs, FactorEveryNonzeroEntry) {
  for (const auto& text : fixtures::suite()) {
    const auto s = signed_matrix(text);
    for (const auto& c : s.cells()) EXPECT_EQ(c.entry, c.row_sign * c.col_sign) << text;
  }
  EXPECT_THROW(SignedGridMatrix(parse_matrix_inline("1 1 / 1 -1"), {1, 1}, {1, 1}), InputError);
}

TEST(Signs, CycleWithOddProductIsRefined) {
  EXPECT_FALSE(admits_signs(parse_matrix_inline("1 1 / 1 -1")));
  const auto s = signed_matrix("1 1 / 1 -1");
  EXPECT_EQ(s.base().rows(), 4u);
  EXPECT_EQ(s.base().cols(), 4u);
  EXPECT_EQ(s.alphabet_size(), 8u);
  EXPECT_TRUE(admits_signs(parse_matrix_inline("1 0 / 0 1")));
  EXPECT_EQ(signed_matrix("1 -1").alphabet_size(), 2u);
}

TEST(Cells, OrderedByRowThenColumn) {
  const auto s = signed_matrix("1 1 / 1 0");
  ASSERT_EQ(s.alphabet_size(), 3u);
  EXPECT_EQ(s.cell(0).row, 0u);
  EXPECT_EQ(s.cell(1).row, 1u);
  EXPECT_EQ(s.cell(1).col, 0u);
  EXPECT_EQ(s.cell(2).col, 1u);
  EXPECT_EQ(cell_lex_compare(s.cell(0), s.cell(1)), LexOrder::less);
  EXPECT_EQ(cell_lex_compare(s.cell(2), s.cell(1)), LexOrder::greater);
  EXPECT_TRUE(s.independent(0, 2));
  EXPECT_FALSE(s.independent(0, 1));
}

TEST(ApplyWord, KnownImages) {
  const auto s = signed_matrix("1 -1");
  EXPECT_EQ(apply_word(s, {1, 0, 1}), perm("231"));
  EXPECT_EQ(apply_word(signed_matrix("1"), {0, 0, 0}), perm("123"));
  EXPECT_EQ(apply_word(signed_matrix("-1"), {0, 0, 0}), perm("321"));
  EXPECT_EQ(apply_word(s, {}), Permutation{});
  EXPECT_THROW(apply_word(s, {2}), InputError);
}

TEST(ApplyWord, AgreesWithGeometricPlacement) {
  std::mt19937 rng(11);
  for (const auto& text : fixtures::suite()) {
    const auto s = signed_matrix(text);
    for (int trial = 0; trial < 200; ++trial) {
      Word w(rng() % 9);
      for (auto& letter : w) letter = static_cast<CellIndex>(rng() % s.alphabet_size());
      const auto g = apply_word_gridded(s, w);
      EXPECT_EQ(g, oracle::place(s, w)) << text;
      EXPECT_TRUE(is_valid_gridding(s, g)) << text;
    }
  }
}

TEST(ApplyWord, CommutingLettersGiveTheSameImage) {
  const auto s = signed_matrix("1 0 / 0 1");
  EXPECT_EQ(apply_word_gridded(s, {0, 1, 0}), apply_word_gridded(s, {1, 0, 0}));
  const auto t = signed_matrix("1 -1");
  EXPECT_NE(apply_word(t, {0, 1}), apply_word(t, {1, 0}));
}

TEST(Gridding, InvalidAssignmentsRejected) {
  const auto s = signed_matrix("1 -1");
  EXPECT_TRUE(is_valid_gridding(s, {perm("132"), {0, 1, 1}}));
  EXPECT_FALSE(is_valid_gridding(s, {perm("132"), {1, 0, 0}}));  // cells out of column order
  EXPECT_FALSE(is_valid_gridding(s, {perm("12"), {1, 1}}));      // against the slope
}

TEST(ExtensionMatrix, DimensionsFollowTheFormula) {
  const auto e = one_point_extension_matrix(signed_matrix("1"));
  EXPECT_EQ(e.matrix.rows(), 4u);
  EXPECT_EQ(e.matrix.cols(), 324u);
  EXPECT_FALSE(e.large);
  EXPECT_THROW(one_point_extension_matrix(signed_matrix("1"), 100), BudgetExceeded);
}

TEST(ExtensionMatrix, ContainsEverySmallMatrix) {
  const auto big = one_point_extension_matrix(signed_matrix("1")).matrix;
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    GridMatrix small(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) small.set(c, r, static_cast<int>(rng() % 3) - 1);
    EXPECT_TRUE(is_submatrix(small, big)) << small.to_inline_string();
  }
}

TEST(Submatrix, KeepsOrder) {
  const auto big = parse_matrix_inline("1 0 / 0 -1");
  EXPECT_TRUE(is_submatrix(parse_matrix_inline("-1"), big));
  EXPECT_TRUE(is_submatrix(parse_matrix_inline("1 0"), big));
  EXPECT_FALSE(is_submatrix(parse_matrix_inline("0 1"), big));
}

TEST(BlockDiagonal, FirstBlockBottomLeft) {
  const auto m = block_diagonal({parse_matrix_inline("1"), parse_matrix_inline("-1 1")});
  EXPECT_EQ(m.to_inline_string(), "0 -1 1 / 1 0 0");
  EXPECT_THROW(block_diagonal({}), InputError);
}
