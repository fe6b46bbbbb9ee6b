#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gridclass::automata {

using BddRef = std::uint32_t;

/// Open-addressing map from 64-bit keys to 32-bit values, used as the
/// operation cache of a single diagram operation (or a batch of them that
/// share the same leaf function).
class Memo {
 public:
  Memo();
  bool find(std::uint64_t key, std::uint32_t& value) const;
  void insert(std::uint64_t key, std::uint32_t value);
  void clear();

 private:
  void grow();
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> values_;
  std::size_t used_ = 0;
};

/// Multi-terminal reduced ordered decision diagrams over boolean variables.
/// Smaller variable ids are tested nearer the root; leaves carry 32-bit
/// values. Nodes are hash-consed, so equal functions share one reference.
class BddManager {
 public:
  static constexpr std::uint32_t kLeafVar = 0xFFFFFFFFu;

  explicit BddManager(std::size_t max_nodes = 40'000'000);

  BddRef leaf(std::uint32_t value);
  /// The node testing `var`; `lo`/`hi` are the 0/1 branches. Throws
  /// BudgetExceeded once the node limit is reached.
  BddRef node(std::uint32_t var, BddRef lo, BddRef hi);

  bool is_leaf(BddRef r) const { return nodes_[r].var == kLeafVar; }
  std::uint32_t value(BddRef r) const { return nodes_[r].lo; }
  std::uint32_t var(BddRef r) const { return nodes_[r].var; }
  BddRef lo(BddRef r) const { return nodes_[r].lo; }
  BddRef hi(BddRef r) const { return nodes_[r].hi; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t max_nodes() const { return max_nodes_; }

  /// Pointwise combination of two diagrams.
  template <class Op>
  BddRef apply(BddRef a, BddRef b, Op&& op, Memo& memo);

  /// Relabels every leaf.
  template <class F>
  BddRef map_leaves(BddRef a, F&& f, Memo& memo);

  /// Eliminates every variable for which `drop(var)` holds, combining the
  /// two branches with `merge`.
  template <class Drop, class Merge>
  BddRef eliminate(BddRef a, Drop&& drop, Merge&& merge, Memo& memo, Memo& merge_memo);

  /// Renames variables with a strictly increasing map (order preserved).
  template <class Map>
  BddRef rename(BddRef a, Map&& map, Memo& memo);

  /// Leaf value reached under the assignment `bit(var)`.
  template <class Bit>
  std::uint32_t evaluate(BddRef a, Bit&& bit) const;

  /// Distinct leaf values in depth-first order (0-branch first).
  std::vector<std::uint32_t> leaves(BddRef a) const;

  /// Variables tested anywhere in `a`, ascending.
  std::vector<std::uint32_t> support(BddRef a) const;

 private:
  struct Node {
    std::uint32_t var;
    std::uint32_t lo;
    std::uint32_t hi;
  };

  static std::uint64_t hash(std::uint32_t var, std::uint32_t lo, std::uint32_t hi);
  void rehash();

  std::size_t max_nodes_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> table_;
};

inline std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

template <class Op>
BddRef BddManager::apply(BddRef a, BddRef b, Op&& op, Memo& memo) {
  if (is_leaf(a) && is_leaf(b)) return leaf(op(value(a), value(b)));
  const std::uint64_t key = pair_key(a, b);
  std::uint32_t cached;
  if (memo.find(key, cached)) return cached;
  const std::uint32_t va = var(a), vb = var(b);
  const std::uint32_t v = va < vb ? va : vb;
  const BddRef a0 = va == v ? lo(a) : a, a1 = va == v ? hi(a) : a;
  const BddRef b0 = vb == v ? lo(b) : b, b1 = vb == v ? hi(b) : b;
  const BddRef r0 = apply(a0, b0, op, memo);
  const BddRef r1 = apply(a1, b1, op, memo);
  const BddRef r = node(v, r0, r1);
  memo.insert(key, r);
  return r;
}

template <class F>
BddRef BddManager::map_leaves(BddRef a, F&& f, Memo& memo) {
  if (is_leaf(a)) return leaf(f(value(a)));
  std::uint32_t cached;
  if (memo.find(a, cached)) return cached;
  const BddRef r0 = map_leaves(lo(a), f, memo);
  const BddRef r1 = map_leaves(hi(a), f, memo);
  const BddRef r = node(var(a), r0, r1);
  memo.insert(a, r);
  return r;
}

template <class Drop, class Merge>
BddRef BddManager::eliminate(BddRef a, Drop&& drop, Merge&& merge, Memo& memo, Memo& merge_memo) {
  if (is_leaf(a)) return a;
  std::uint32_t cached;
  if (memo.find(a, cached)) return cached;
  const std::uint32_t v = var(a);
  const BddRef r0 = eliminate(lo(a), drop, merge, memo, merge_memo);
  const BddRef r1 = eliminate(hi(a), drop, merge, memo, merge_memo);
  const BddRef r = drop(v) ? apply(r0, r1, merge, merge_memo) : node(v, r0, r1);
  memo.insert(a, r);
  return r;
}

template <class Map>
BddRef BddManager::rename(BddRef a, Map&& map, Memo& memo) {
  if (is_leaf(a)) return a;
  std::uint32_t cached;
  if (memo.find(a, cached)) return cached;
  const BddRef r0 = rename(lo(a), map, memo);
  const BddRef r1 = rename(hi(a), map, memo);
  const BddRef r = node(map(var(a)), r0, r1);
  memo.insert(a, r);
  return r;
}

template <class Bit>
std::uint32_t BddManager::evaluate(BddRef a, Bit&& bit) const {
  while (!is_leaf(a)) a = bit(var(a)) ? hi(a) : lo(a);
  return value(a);
}

}  // namespace gridclass::automata
