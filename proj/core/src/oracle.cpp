#include "gridclass/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <unordered_set>

#include <boost/rational.hpp>

#include "gridclass/errors.hpp"
#include "json.hpp"

namespace gridclass::oracle {

namespace {

using Rational = boost::rational<long long>;

struct OracleCell {
  std::size_t col;
  std::size_t row;
  int row_sign;
  int col_sign;
};

std::vector<OracleCell> cells_of(const SignedGridMatrix& s) {
  std::vector<OracleCell> cells;
  const GridMatrix& m = s.base();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.at(c, r) != 0) cells.push_back({c, r, s.row_sign(r), s.col_sign(c)});
  return cells;
}

struct Point {
  Rational x;
  Rational y;
};

// coordinates[cell][k] for the k-th letter (1-based) of a word of length n.
std::vector<std::vector<Point>> coordinate_table(const std::vector<OracleCell>& cells, std::size_t n) {
  std::vector<std::vector<Point>> table(cells.size(), std::vector<Point>(n + 1));
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t k = 1; k <= n; ++k) {
      const Rational t(static_cast<long long>(k), static_cast<long long>(n + 1));
      const Rational along_x = cells[i].col_sign > 0 ? t : Rational(1) - t;
      const Rational along_y = cells[i].row_sign > 0 ? t : Rational(1) - t;
      table[i][k] = {Rational(static_cast<long long>(cells[i].col)) + along_x,
                     Rational(static_cast<long long>(cells[i].row)) + along_y};
    }
  return table;
}

GriddedPermutation read_off(const std::vector<std::vector<Point>>& table, const Word& w) {
  const std::size_t n = w.size();
  std::vector<std::size_t> by_x(n);
  std::iota(by_x.begin(), by_x.end(), 0);
  auto pt = [&](std::size_t k) -> const Point& { return table[w[k]][k + 1]; };
  std::sort(by_x.begin(), by_x.end(), [&](std::size_t a, std::size_t b) { return pt(a).x < pt(b).x; });
  std::vector<Rational> heights(n);
  GriddedPermutation g;
  g.cell_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    heights[i] = pt(by_x[i]).y;
    g.cell_of[i] = w[by_x[i]];
  }
  std::vector<std::size_t> by_y(n);
  std::iota(by_y.begin(), by_y.end(), 0);
  std::sort(by_y.begin(), by_y.end(), [&](std::size_t a, std::size_t b) { return heights[a] < heights[b]; });
  std::vector<int> values(n);
  for (std::size_t rank = 0; rank < n; ++rank) values[by_y[rank]] = static_cast<int>(rank) + 1;
  g.perm = Permutation(std::move(values));
  return g;
}

void check_budget(std::size_t letters, std::size_t n, std::size_t max_words) {
  std::size_t words = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (letters != 0 && words > max_words / letters) throw BudgetExceeded("oracle word enumeration too large", "");
    words *= letters;
  }
}

// Calls visit(word) for every word of length n over `letters` symbols.
template <class Visit>
void for_each_word(std::size_t letters, std::size_t n, Visit visit) {
  Word w(n, 0);
  if (n == 0) {
    visit(w);
    return;
  }
  if (letters == 0) return;
  while (true) {
    visit(w);
    std::size_t i = n;
    while (i > 0 && w[i - 1] + 1 == letters) w[--i] = 0;
    if (i == 0) return;
    ++w[i - 1];
  }
}

std::string key_of(const GriddedPermutation& g) {
  std::string key;
  for (std::size_t i = 0; i < g.cell_of.size(); ++i) {
    key += std::to_string(g.perm[i]) + ":" + std::to_string(g.cell_of[i]) + ",";
  }
  return key;
}

bool cell_before(const std::vector<OracleCell>& cells, CellIndex a, CellIndex b) {
  if (cells[a].row != cells[b].row) return cells[a].row < cells[b].row;
  return cells[a].col < cells[b].col;
}

Permutation pattern_at(const Permutation& host, const std::vector<std::size_t>& positions) {
  std::vector<int> picked;
  for (std::size_t i : positions) picked.push_back(host[i]);
  return Permutation::standardize(picked);
}

}  // namespace

GriddedPermutation place(const SignedGridMatrix& s, const Word& w) {
  const auto cells = cells_of(s);
  for (CellIndex c : w)
    if (c >= cells.size()) throw InputError("letter outside the alphabet");
  return read_off(coordinate_table(cells, w.size()), w);
}

std::set<Permutation> brute_members(const SignedGridMatrix& s, std::size_t n, std::size_t max_words) {
  const auto cells = cells_of(s);
  check_budget(cells.size(), n, max_words);
  const auto table = coordinate_table(cells, n);
  std::unordered_set<std::uint64_t> seen;
  std::set<Permutation> out;
  for_each_word(cells.size(), n, [&](const Word& w) {
    GriddedPermutation g = read_off(table, w);
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < n; ++i) key = key * 17 + static_cast<std::uint64_t>(g.perm[i]);
    if (n > 15 || seen.insert(key).second) out.insert(std::move(g.perm));
  });
  return out;
}

std::set<GriddedPermutation> brute_gridded(const SignedGridMatrix& s, std::size_t n, std::size_t max_words) {
  const auto cells = cells_of(s);
  check_budget(cells.size(), n, max_words);
  const auto table = coordinate_table(cells, n);
  std::unordered_set<std::string> seen;
  std::set<GriddedPermutation> out;
  for_each_word(cells.size(), n, [&](const Word& w) {
    GriddedPermutation g = read_off(table, w);
    if (seen.insert(key_of(g)).second) out.insert(std::move(g));
  });
  return out;
}

bool occurs_in(const Permutation& pattern, const Permutation& host) {
  const std::size_t k = pattern.size(), n = host.size();
  if (k > n) return false;
  if (k == 0) return true;
  std::vector<char> chosen(n, 0);
  std::fill(chosen.end() - static_cast<long>(k), chosen.end(), 1);
  do {
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < n; ++i)
      if (chosen[i]) positions.push_back(i);
    if (pattern_at(host, positions) == pattern) return true;
  } while (std::next_permutation(chosen.begin(), chosen.end()));
  return false;
}

bool interval_free(const Permutation& p) {
  const std::size_t n = p.size();
  for (std::size_t len = 2; len < n; ++len)
    for (std::size_t start = 0; start + len <= n; ++start) {
      int lo = p[start], hi = p[start];
      for (std::size_t i = start; i < start + len; ++i) {
        lo = std::min(lo, p[i]);
        hi = std::max(hi, p[i]);
      }
      if (static_cast<std::size_t>(hi - lo) + 1 == len) return false;
    }
  return true;
}

std::set<Permutation> brute_simple(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::set<Permutation> out;
  do {
    Permutation p(v);
    if (interval_free(p)) out.insert(std::move(p));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::vector<Permutation> minimal_non_members(const std::vector<std::set<Permutation>>& members) {
  std::vector<Permutation> out;
  for (std::size_t n = 1; n < members.size(); ++n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    do {
      Permutation p(v);
      if (members[n].count(p)) continue;
      bool minimal = true;
      for (std::size_t drop = 0; drop < n && minimal; ++drop) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < n; ++i)
          if (i != drop) keep.push_back(i);
        minimal = members[n - 1].count(pattern_at(p, keep)) > 0;
      }
      if (minimal) out.push_back(std::move(p));
    } while (std::next_permutation(v.begin(), v.end()));
  }
  return out;
}

std::vector<Permutation> brute_basis(const SignedGridMatrix& s, std::size_t max_length, std::size_t max_words) {
  std::vector<std::set<Permutation>> members;
  for (std::size_t n = 0; n <= max_length; ++n) members.push_back(brute_members(s, n, max_words));
  return minimal_non_members(members);
}

std::vector<Permutation> minimal_simple_non_members(const std::vector<std::set<Permutation>>& members) {
  std::vector<Permutation> out;
  for (std::size_t n = 1; n < members.size(); ++n)
    for (const Permutation& p : brute_simple(n)) {
      if (members[n].count(p)) continue;
      bool minimal = true;
      for (std::size_t k = 1; k < n && minimal; ++k)
        for (const Permutation& q : brute_simple(k))
          if (!members[k].count(q) && occurs_in(q, p)) {
            minimal = false;
            break;
          }
      if (minimal) out.push_back(p);
    }
  return out;
}

std::vector<GriddedPermutation> brute_griddings(const SignedGridMatrix& s, const Permutation& p) {
  std::vector<GriddedPermutation> out;
  for (const auto& g : brute_gridded(s, p.size()))
    if (g.perm == p) out.push_back(g);
  return out;
}

GriddedPermutation brute_minimal_gridding(const SignedGridMatrix& s, const Permutation& p) {
  const auto cells = cells_of(s);
  const auto all = brute_griddings(s, p);
  if (all.empty()) throw InputError("permutation has no gridding");
  const GriddedPermutation* best = &all.front();
  for (const auto& g : all) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (g.cell_of[i] == best->cell_of[i]) continue;
      if (cell_before(cells, g.cell_of[i], best->cell_of[i])) best = &g;
      break;
    }
  }
  return *best;
}

OracleReport make_report(const SignedGridMatrix& s, std::size_t min_length, std::size_t max_length,
                         std::size_t max_words) {
  const auto start = std::chrono::steady_clock::now();
  OracleReport r;
  r.matrix = s.base().to_inline_string();
  r.min_length = min_length;
  r.max_length = max_length;
  std::vector<std::set<Permutation>> members;
  for (std::size_t n = 0; n <= max_length; ++n) {
    members.push_back(brute_members(s, n, max_words));
    if (n >= min_length) {
      r.members.emplace_back(members.back().begin(), members.back().end());
      r.gridded_counts.push_back(brute_gridded(s, n, max_words).size());
    }
  }
  r.minimal_non_members = minimal_non_members(members);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string to_json(const OracleReport& r) {
  nlohmann::ordered_json j;
  j["matrix"] = r.matrix;
  j["min_length"] = r.min_length;
  j["max_length"] = r.max_length;
  nlohmann::ordered_json lengths = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.members.size(); ++i) {
    nlohmann::ordered_json entry;
    entry["length"] = r.min_length + i;
    entry["count"] = r.members[i].size();
    entry["gridded_count"] = r.gridded_counts[i];
    std::vector<std::string> perms;
    for (const auto& p : r.members[i]) perms.push_back(p.to_string());
    entry["members"] = perms;
    lengths.push_back(entry);
  }
  j["lengths"] = lengths;
  std::vector<std::string> basis;
  for (const auto& p : r.minimal_non_members) basis.push_back(p.to_string());
  j["minimal_non_members"] = basis;
  j["seconds"] = r.seconds;
  return j.dump(2);
}

}  // namespace gridclass::oracle
