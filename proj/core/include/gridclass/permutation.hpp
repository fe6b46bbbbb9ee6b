#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace gridclass {

/// A finite permutation in one-line notation. Point i (0-based) sits at
/// position i in the first order and has value values()[i] (1-based) in the
/// second order.
class Permutation {
 public:
  Permutation() = default;
  /// Throws InputError unless `values` is exactly {1, ..., n}.
  explicit Permutation(std::vector<int> values);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  int operator[](std::size_t i) const { return values_[i]; }
  const std::vector<int>& values() const noexcept { return values_; }

  /// Points in the same relative order as `keys`, i.e. the standardization.
  template <class T>
  static Permutation standardize(const std::vector<T>& keys);

  /// Space separated one-line form, e.g. "2 4 1 3". Empty string for length 0.
  std::string to_string() const;
  /// Compact form without separators when every value is < 10, e.g. "2413".
  std::string to_compact_string() const;

  /// Ordering by length, then lexicographically by one-line form.
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation& a, const Permutation& b) = default;

 private:
  std::vector<int> values_;
};

/// Parses one-line notation; values separated by spaces and/or commas.
/// An all-blank string is the empty permutation.
Permutation parse_permutation(std::string_view text);

/// Parses a list of permutations separated by ';' or '/'. Each entry may be
/// written with separators ("2 1 3") or compactly ("213") when all values < 10.
std::vector<Permutation> parse_permutation_list(std::string_view text);

/// Order-isomorphic occurrence of `needle` inside `haystack`.
bool contains_pattern(const Permutation& haystack, const Permutation& needle);

/// Removes the point at 0-based position `index` and renormalizes values.
/// Throws std::out_of_range when `index >= p.size()`.
Permutation delete_point(const Permutation& p, std::size_t index);

/// delete_point for every index in order (duplicates kept).
std::vector<Permutation> all_deletions(const Permutation& p);

/// Every permutation of length p.size() + 1 that has p as a one-point deletion,
/// sorted and deduplicated.
std::vector<Permutation> one_point_extensions(const Permutation& p);

/// All permutations of length n in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t n);

/// Interval-free test: no block of 2..n-1 consecutive positions holds a set of
/// consecutive values. Lengths 0, 1 and 2 count as simple.
bool is_simple(const Permutation& p);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

template <class T>
Permutation Permutation::standardize(const std::vector<T>& keys) {
  std::vector<std::size_t> order(keys.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<int> values(keys.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) values[order[rank]] = static_cast<int>(rank) + 1;
  Permutation p;
  p.values_ = std::move(values);
  return p;
}

}  // namespace gridclass
