#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "gridclass/gf.hpp"
#include "gridclass/grid.hpp"
#include "gridclass/permutation.hpp"

namespace gridclass {

// Readable failure messages.
inline void PrintTo(const Permutation& p, std::ostream* os) { *os << '[' << p.to_string() << ']'; }
inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const RationalGF& g, std::ostream* os) { *os << g.to_string(); }

}  // namespace gridclass

namespace fixtures {

using namespace gridclass;

// The matrices every property is checked on, in inline reading-order form.
inline const std::vector<std::string>& suite() {
  static const std::vector<std::string> matrices{"1",     "-1",        "1 -1",      "1 / 1",
                                                 "1 1",   "1 0 / 0 1", "0 1 / 1 0", "1 1 / 1 -1"};
  return matrices;
}

// The suite without the eight-cell refinement, for checks that enumerate
// every word of a given length.
inline std::vector<std::string> small_suite() { return {suite().begin(), suite().end() - 1}; }

inline SignedGridMatrix signed_matrix(const std::string& text) { return refine_to_pmm(parse_matrix_inline(text)); }

inline Permutation perm(const std::string& text) { return parse_permutation_list(text).front(); }

inline std::vector<Permutation> perms(const std::string& text) { return parse_permutation_list(text); }

inline std::vector<Word> all_words(std::size_t letters, std::size_t n) {
  std::vector<Word> out;
  Word w(n, 0);
  if (n == 0) return {w};
  if (letters == 0) return {};
  while (true) {
    out.push_back(w);
    std::size_t i = n;
    while (i > 0 && w[i - 1] + 1 == letters) w[--i] = 0;
    if (i == 0) return out;
    ++w[i - 1];
  }
}

}  // namespace fixtures
