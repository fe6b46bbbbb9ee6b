#include "gridclass/grid.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>

#include "gridclass/errors.hpp"

namespace gridclass {

GridMatrix::GridMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, 0) {
  if (rows == 0 || cols == 0) throw InputError("matrix must have at least one row and one column");
}

GridMatrix GridMatrix::from_rows_top_down(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty()) throw InputError("matrix must have at least one row and one column");
  GridMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw InputError("ragged matrix rows", i + 1, 1);
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(c, rows.size() - 1 - i, rows[i][c]);
  }
  return m;
}

void GridMatrix::set(std::size_t col, std::size_t row, int value) {
  if (value < -1 || value > 1) throw InputError("matrix entries must be -1, 0 or 1");
  entries_.at(row * cols_ + col) = value;
}

std::size_t GridMatrix::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](int v) { return v != 0; }));
}

std::vector<std::vector<int>> GridMatrix::rows_top_down() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[rows_ - 1 - r][c] = at(c, r);
  return out;
}

std::string GridMatrix::to_inline_string() const {
  std::string out;
  auto rows = rows_top_down();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += " / ";
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      if (c) out += ' ';
      out += std::to_string(rows[i][c]);
    }
  }
  return out;
}

namespace {

// Parses the entries of one matrix row; `line` and `offset` locate it for diagnostics.
std::vector<int> parse_row(std::string_view text, std::size_t line, std::size_t offset) {
  std::vector<int> row;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string_view token = text.substr(start, i - start);
    if (token == "0") {
      row.push_back(0);
    } else if (token == "1" || token == "+1") {
      row.push_back(1);
    } else if (token == "-1") {
      row.push_back(-1);
    } else {
      throw InputError("matrix entry '" + std::string(token) + "' is not one of -1, 0, 1", line, offset + start + 1);
    }
  }
  return row;
}

GridMatrix assemble(const std::vector<std::vector<int>>& rows, const std::vector<std::size_t>& lines) {
  if (rows.empty()) throw InputError("matrix has no rows");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) {
      throw InputError("row has " + std::to_string(rows[i].size()) + " entries, expected " +
                           std::to_string(rows[0].size()),
                       lines[i], 1);
    }
  }
  return GridMatrix::from_rows_top_down(rows);
}

}  // namespace

GridMatrix parse_matrix_text(std::string_view text) {
  std::vector<std::vector<int>> rows;
  std::vector<std::size_t> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto row = parse_row(line, line_no, 0);
    if (!row.empty()) {
      rows.push_back(std::move(row));
      lines.push_back(line_no);
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return assemble(rows, lines);
}

GridMatrix parse_matrix_inline(std::string_view text) {
  std::vector<std::vector<int>> rows;
  std::vector<std::size_t> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('/', pos);
    if (end == std::string_view::npos) end = text.size();
    auto row = parse_row(text.substr(pos, end - pos), 1, pos);
    if (row.empty()) throw InputError("empty matrix row", 1, pos + 1);
    rows.push_back(std::move(row));
    lines.push_back(1);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return assemble(rows, lines);
}

SignedGridMatrix::SignedGridMatrix(GridMatrix base, std::vector<int> row_signs, std::vector<int> col_signs)
    : base_(std::move(base)), row_signs_(std::move(row_signs)), col_signs_(std::move(col_signs)) {
  if (row_signs_.size() != base_.rows() || col_signs_.size() != base_.cols()) {
    throw InputError("sign vector sizes do not match the matrix");
  }
  for (int s : row_signs_)
    if (s != 1 && s != -1) throw InputError("row signs must be +1 or -1");
  for (int s : col_signs_)
    if (s != 1 && s != -1) throw InputError("column signs must be +1 or -1");
  for (std::size_t r = 0; r < base_.rows(); ++r) {
    for (std::size_t c = 0; c < base_.cols(); ++c) {
      int v = base_.at(c, r);
      if (v == 0) continue;
      if (v != row_signs_[r] * col_signs_[c]) {
        throw InputError("entry at column " + std::to_string(c + 1) + ", row " + std::to_string(r + 1) +
                         " is not the product of its row and column signs");
      }
      cells_.push_back(Cell{static_cast<CellIndex>(cells_.size()), c, r, v, row_signs_[r], col_signs_[c]});
    }
  }
}

namespace {

// Two-colours the bipartite row/column graph; empty result when inconsistent.
bool solve_signs(const GridMatrix& m, std::vector<int>& row_signs, std::vector<int>& col_signs) {
  const std::size_t t = m.rows();
  const std::size_t u = m.cols();
  std::vector<int> sign(t + u, 0);
  for (std::size_t start = 0; start < t + u; ++start) {
    if (sign[start] != 0) continue;
    sign[start] = 1;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      if (v < t) {
        for (std::size_t c = 0; c < u; ++c) {
          int e = m.at(c, v);
          if (e == 0) continue;
          int want = e * sign[v];
          if (sign[t + c] == 0) {
            sign[t + c] = want;
            queue.push_back(t + c);
          } else if (sign[t + c] != want) {
            return false;
          }
        }
      } else {
        std::size_t c = v - t;
        for (std::size_t r = 0; r < t; ++r) {
          int e = m.at(c, r);
          if (e == 0) continue;
          int want = e * sign[v];
          if (sign[r] == 0) {
            sign[r] = want;
            queue.push_back(r);
          } else if (sign[r] != want) {
            return false;
          }
        }
      }
    }
  }
  row_signs.assign(sign.begin(), sign.begin() + static_cast<std::ptrdiff_t>(t));
  col_signs.assign(sign.begin() + static_cast<std::ptrdiff_t>(t), sign.end());
  return true;
}

}  // namespace

bool admits_signs(const GridMatrix& m) {
  std::vector<int> rows, cols;
  return solve_signs(m, rows, cols);
}

SignedGridMatrix refine_to_pmm(const GridMatrix& m) {
  std::vector<int> row_signs, col_signs;
  if (solve_signs(m, row_signs, col_signs)) return SignedGridMatrix(m, row_signs, col_signs);

  GridMatrix refined(2 * m.rows(), 2 * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      switch (m.at(c, r)) {
        case 1:
          refined.set(2 * c, 2 * r, 1);
          refined.set(2 * c + 1, 2 * r + 1, 1);
          break;
        case -1:
          refined.set(2 * c, 2 * r + 1, -1);
          refined.set(2 * c + 1, 2 * r, -1);
          break;
        default:
          break;
      }
    }
  }
  row_signs.assign(refined.rows(), 1);
  col_signs.assign(refined.cols(), 1);
  for (std::size_t r = 1; r < refined.rows(); r += 2) row_signs[r] = -1;
  for (std::size_t c = 1; c < refined.cols(); c += 2) col_signs[c] = -1;
  return SignedGridMatrix(std::move(refined), std::move(row_signs), std::move(col_signs));
}

LexOrder cell_lex_compare(const Cell& a, const Cell& b) {
  if (a.row != b.row) return a.row < b.row ? LexOrder::less : LexOrder::greater;
  if (a.col != b.col) return a.col < b.col ? LexOrder::less : LexOrder::greater;
  return LexOrder::equal;
}

GriddedPermutation apply_word_gridded(const SignedGridMatrix& s, const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] >= s.alphabet_size()) {
      throw InputError("letter " + std::to_string(w[i] + 1) + " at word index " + std::to_string(i + 1) +
                       " is outside the alphabet of " + std::to_string(s.alphabet_size()) + " cells");
    }
  }
  // Earlier letters are closer to their cell's origin; within a shared column
  // (row) the column (row) sign says whether closer means further left (down).
  auto before_horizontally = [&](std::size_t i, std::size_t j) {
    const Cell& a = s.cell(w[i]);
    const Cell& b = s.cell(w[j]);
    if (a.col != b.col) return a.col < b.col;
    return a.col_sign > 0 ? i < j : i > j;
  };
  auto below = [&](std::size_t i, std::size_t j) {
    const Cell& a = s.cell(w[i]);
    const Cell& b = s.cell(w[j]);
    if (a.row != b.row) return a.row < b.row;
    return a.row_sign > 0 ? i < j : i > j;
  };
  std::vector<std::size_t> by_position(n), by_value(n);
  std::iota(by_position.begin(), by_position.end(), 0);
  std::iota(by_value.begin(), by_value.end(), 0);
  std::sort(by_position.begin(), by_position.end(), before_horizontally);
  std::sort(by_value.begin(), by_value.end(), below);
  std::vector<int> value_of(n);
  for (std::size_t rank = 0; rank < n; ++rank) value_of[by_value[rank]] = static_cast<int>(rank) + 1;
  std::vector<int> values(n);
  std::vector<CellIndex> cells(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    values[pos] = value_of[by_position[pos]];
    cells[pos] = w[by_position[pos]];
  }
  return GriddedPermutation{Permutation(std::move(values)), std::move(cells)};
}

Permutation apply_word(const SignedGridMatrix& s, const Word& w) { return apply_word_gridded(s, w).perm; }

ExtensionMatrix one_point_extension_matrix(const SignedGridMatrix& s, std::size_t max_entries) {
  const std::size_t rows = 3 * s.base().rows() + 1;
  const std::size_t copies = 3 * s.base().cols() + 1;
  std::size_t block = 1;
  for (std::size_t i = 0; i < rows; ++i) {
    block *= 3;
    if (block * rows * copies > max_entries) {
      throw BudgetExceeded("one-point extension matrix would have more than " + std::to_string(max_entries) +
                               " entries",
                           "one_point_extension_matrix(" + s.base().to_inline_string() + ")");
    }
  }
  GridMatrix n(rows, copies * block);
  for (std::size_t copy = 0; copy < copies; ++copy) {
    for (std::size_t k = 0; k < block; ++k) {
      std::size_t code = k;
      for (std::size_t r = 0; r < rows; ++r) {
        const int digit = static_cast<int>(code % 3);
        code /= 3;
        n.set(copy * block + k, r, digit == 2 ? -1 : digit);
      }
    }
  }
  return ExtensionMatrix{std::move(n), rows * copies * block > kLargeExtensionEntries};
}

bool is_submatrix(const GridMatrix& small, const GridMatrix& big) {
  if (small.rows() > big.rows() || small.cols() > big.cols()) return false;
  std::vector<std::size_t> chosen(small.rows());
  // Enumerate row selections; columns can then be matched greedily left to right.
  std::vector<bool> mask(big.rows(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(small.rows()), true);
  do {
    std::size_t k = 0;
    for (std::size_t r = 0; r < big.rows(); ++r)
      if (mask[r]) chosen[k++] = r;
    std::size_t next = 0;
    for (std::size_t c = 0; c < big.cols() && next < small.cols(); ++c) {
      bool match = true;
      for (std::size_t r = 0; r < small.rows() && match; ++r) match = big.at(c, chosen[r]) == small.at(next, r);
      if (match) ++next;
    }
    if (next == small.cols()) return true;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return false;
}

GridMatrix block_diagonal(const std::vector<GridMatrix>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  if (blocks.empty()) throw InputError("block_diagonal needs at least one block");
  GridMatrix out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out.set(c0 + c, r0 + r, b.at(c, r));
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

bool is_valid_gridding(const SignedGridMatrix& s, const GriddedPermutation& g) {
  const std::size_t n = g.perm.size();
  if (g.cell_of.size() != n) return false;
  for (CellIndex c : g.cell_of)
    if (c >= s.alphabet_size()) return false;
  // closer[x][y]: x is strictly closer than y to the origin along a shared row or column.
  std::vector<std::vector<char>> closer(n, std::vector<char>(n, 0));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const Cell& a = s.cell(g.cell_of[x]);
      const Cell& b = s.cell(g.cell_of[y]);
      const bool left = x < y;
      const bool lower = g.perm[x] < g.perm[y];
      if (a.col < b.col && !left) return false;
      if (a.row < b.row && !lower) return false;
      if (a.index == b.index && left && (lower != (a.entry > 0))) return false;
      if (a.row == b.row && (a.row_sign > 0 ? lower : !lower)) closer[x][y] = 1;
      if (a.col == b.col && (a.col_sign > 0 ? left : !left)) closer[x][y] = 1;
    }
  }
  // Kahn's algorithm.
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) indegree[y] += closer[x][y];
  std::vector<std::size_t> ready;
  for (std::size_t y = 0; y < n; ++y)
    if (indegree[y] == 0) ready.push_back(y);
  std::size_t removed = 0;
  while (!ready.empty()) {
    std::size_t x = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t y = 0; y < n; ++y) {
      if (closer[x][y] && --indegree[y] == 0) ready.push_back(y);
    }
  }
  return removed == n;
}

}  // namespace gridclass
