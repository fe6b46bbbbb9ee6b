#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gridclass/permutation.hpp"

namespace gridclass {

/// A t x u matrix over {-1, 0, +1} in Cartesian orientation: row 0 is the
/// bottom row, column 0 the leftmost column.
class GridMatrix {
 public:
  GridMatrix(std::size_t rows, std::size_t cols);

  /// Rows given top row first (reading order), as typed by users.
  static GridMatrix from_rows_top_down(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int at(std::size_t col, std::size_t row) const { return entries_[row * cols_ + col]; }
  void set(std::size_t col, std::size_t row, int value);

  std::size_t nonzero_count() const;
  std::vector<std::vector<int>> rows_top_down() const;
  /// Reading-order text with rows separated by " / ", e.g. "1 0 / 0 -1".
  std::string to_inline_string() const;

  friend bool operator==(const GridMatrix&, const GridMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<int> entries_;
};

/// Matrix file format: one row per line, top row first, entries from
/// {-1, 0, 1} separated by whitespace. Blank lines and '#' comments are ignored.
GridMatrix parse_matrix_text(std::string_view text);
/// Inline form: rows separated by '/', e.g. "1 0 / 0 -1".
GridMatrix parse_matrix_inline(std::string_view text);

using CellIndex = std::uint32_t;
/// A word over the nonzero-cell alphabet of a SignedGridMatrix.
using Word = std::vector<CellIndex>;

/// A nonzero cell. Cells are indexed by (row ascending, column ascending).
struct Cell {
  CellIndex index;
  std::size_t col;
  std::size_t row;
  int entry;
  int row_sign;
  int col_sign;

  bool origin_at_bottom() const noexcept { return row_sign > 0; }
  bool origin_at_left() const noexcept { return col_sign > 0; }
};

/// A partial multiplication matrix: a GridMatrix with row and column signs
/// such that every nonzero entry equals row sign times column sign.
class SignedGridMatrix {
 public:
  /// Throws InputError when the signs are not +-1 or do not factor the entries.
  SignedGridMatrix(GridMatrix base, std::vector<int> row_signs, std::vector<int> col_signs);

  const GridMatrix& base() const noexcept { return base_; }
  int row_sign(std::size_t row) const { return row_signs_[row]; }
  int col_sign(std::size_t col) const { return col_signs_[col]; }
  const std::vector<int>& row_signs() const noexcept { return row_signs_; }
  const std::vector<int>& col_signs() const noexcept { return col_signs_; }

  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const Cell& cell(CellIndex i) const { return cells_.at(i); }
  std::size_t alphabet_size() const noexcept { return cells_.size(); }

  bool same_row(CellIndex a, CellIndex b) const { return cells_[a].row == cells_[b].row; }
  bool same_col(CellIndex a, CellIndex b) const { return cells_[a].col == cells_[b].col; }
  /// Cells sharing neither a row nor a column commute in words.
  bool independent(CellIndex a, CellIndex b) const { return !same_row(a, b) && !same_col(a, b); }

 private:
  GridMatrix base_;
  std::vector<int> row_signs_;
  std::vector<int> col_signs_;
  std::vector<Cell> cells_;
};

/// Signs via 2-colouring when they exist; otherwise the 2x2-block refinement
/// whose geometric grid class is the same.
SignedGridMatrix refine_to_pmm(const GridMatrix& m);

/// Signs for `m` if the partial multiplication property can be satisfied.
bool admits_signs(const GridMatrix& m);

enum class LexOrder { less, equal, greater };

/// Total order on cells: lower row first, then further left within a row.
LexOrder cell_lex_compare(const Cell& a, const Cell& b);

/// A permutation together with the cell of each point (indexed by position).
struct GriddedPermutation {
  Permutation perm;
  std::vector<CellIndex> cell_of;

  friend bool operator==(const GriddedPermutation&, const GriddedPermutation&) = default;
  friend auto operator<=>(const GriddedPermutation& a, const GriddedPermutation& b) {
    if (auto c = a.perm <=> b.perm; c != 0) return c;
    return a.cell_of <=> b.cell_of;
  }
};

/// Places the letters of `w` on the standard figure, each strictly further
/// from its cell's origin than every earlier letter, and reads off the
/// gridded permutation. Throws InputError for letters outside the alphabet.
GriddedPermutation apply_word_gridded(const SignedGridMatrix& s, const Word& w);

/// Underlying permutation of apply_word_gridded.
Permutation apply_word(const SignedGridMatrix& s, const Word& w);

inline constexpr std::size_t kLargeExtensionEntries = 1u << 16;

/// Result of one_point_extension_matrix; `large` warns that the matrix has
/// more than kLargeExtensionEntries entries.
struct ExtensionMatrix {
  GridMatrix matrix;
  bool large = false;
};

/// A (3t+1) x (3u+1)*3^(3t+1) matrix containing every (3t+1) x (3u+1)
/// matrix over {0, +-1} as a submatrix: 3u+1 copies of a block whose columns
/// list all of {0, 1, -1}^(3t+1) in base-3 order (bottom row least significant).
/// Throws BudgetExceeded when it would have more than `max_entries` entries.
ExtensionMatrix one_point_extension_matrix(const SignedGridMatrix& s, std::size_t max_entries = 1u << 26);

/// Whether `small` is a submatrix of `big` (rows and columns deleted, order kept).
bool is_submatrix(const GridMatrix& small, const GridMatrix& big);

/// Block-diagonal arrangement (first matrix bottom-left, later ones up and to the right).
GridMatrix block_diagonal(const std::vector<GridMatrix>& blocks);

/// Checks the gridding constraints directly: each point sits in a nonzero
/// cell, points in distinct columns/rows are ordered like their cells, points
/// sharing a cell follow its slope, and the "closer to the origin" relation
/// between points sharing a row or column is acyclic.
bool is_valid_gridding(const SignedGridMatrix& s, const GriddedPermutation& g);

}  // namespace gridclass
