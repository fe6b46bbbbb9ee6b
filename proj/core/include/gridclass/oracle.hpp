#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "gridclass/grid.hpp"
#include "gridclass/permutation.hpp"

// Exhaustive reference implementations. Nothing here calls into the word
// encoding, membership search, compiler or pattern routines of the main
// library; it only borrows the plain data types.
namespace gridclass::oracle {

inline constexpr std::size_t kDefaultMaxWords = 40'000'000;

/// Images of all words of length n, placed geometrically: point k of a word
/// sits at parameter k/(n+1) along its cell's segment, measured from the
/// cell's origin, with exact rational coordinates. Throws BudgetExceeded
/// when |cells|^n exceeds `max_words`.
std::set<Permutation> brute_members(const SignedGridMatrix& s, std::size_t n,
                                    std::size_t max_words = kDefaultMaxWords);

std::set<GriddedPermutation> brute_gridded(const SignedGridMatrix& s, std::size_t n,
                                           std::size_t max_words = kDefaultMaxWords);

/// The gridded permutation of one word by geometric placement.
GriddedPermutation place(const SignedGridMatrix& s, const Word& w);

/// Containment by trying every subset of positions.
bool occurs_in(const Permutation& pattern, const Permutation& host);

/// Interval-free check over every contiguous block of positions.
bool interval_free(const Permutation& p);

/// Simple permutations of length n.
std::set<Permutation> brute_simple(std::size_t n);

/// Minimal non-members up to `max_length` of the class whose members of
/// length k are `members[k]` (k = 0..max_length).
std::vector<Permutation> minimal_non_members(const std::vector<std::set<Permutation>>& members);

/// Basis elements of Geom(s) of length at most `max_length`.
std::vector<Permutation> brute_basis(const SignedGridMatrix& s, std::size_t max_length,
                                     std::size_t max_words = kDefaultMaxWords);

/// Minimal simple non-members: simple permutations outside the class all of
/// whose proper simple patterns are members.
std::vector<Permutation> minimal_simple_non_members(const std::vector<std::set<Permutation>>& members);

/// All valid griddings of `p` (the gridded images of words whose underlying
/// permutation is `p`).
std::vector<GriddedPermutation> brute_griddings(const SignedGridMatrix& s, const Permutation& p);

/// The least valid gridding of `p`: griddings are compared at the leftmost
/// point where they differ, lower cell first and then the cell further left.
/// Throws InputError when `p` has no gridding.
GriddedPermutation brute_minimal_gridding(const SignedGridMatrix& s, const Permutation& p);

struct OracleReport {
  std::string matrix;
  std::size_t min_length = 0;
  std::size_t max_length = 0;
  std::vector<std::vector<Permutation>> members;  // index = length - min_length
  std::vector<std::size_t> gridded_counts;
  std::vector<Permutation> minimal_non_members;   // lengths 1..max_length
  double seconds = 0;
};

OracleReport make_report(const SignedGridMatrix& s, std::size_t min_length, std::size_t max_length,
                         std::size_t max_words = kDefaultMaxWords);

/// Two-space indented JSON.
std::string to_json(const OracleReport& r);

}  // namespace gridclass::oracle
