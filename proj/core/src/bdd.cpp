#include "gridclass/bdd.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "gridclass/errors.hpp"

namespace gridclass::automata {

namespace {

constexpr std::uint64_t kEmptyKey = ~std::uint64_t{0};
constexpr std::uint32_t kEmptySlot = 0xFFFFFFFFu;

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

}  // namespace

Memo::Memo() : keys_(1024, kEmptyKey), values_(1024, 0) {}

bool Memo::find(std::uint64_t key, std::uint32_t& value) const {
  const std::size_t mask = keys_.size() - 1;
  for (std::size_t i = mix(key) & mask;; i = (i + 1) & mask) {
    if (keys_[i] == key) {
      value = values_[i];
      return true;
    }
    if (keys_[i] == kEmptyKey) return false;
  }
}

void Memo::insert(std::uint64_t key, std::uint32_t value) {
  if (2 * (used_ + 1) > keys_.size()) grow();
  const std::size_t mask = keys_.size() - 1;
  for (std::size_t i = mix(key) & mask;; i = (i + 1) & mask) {
    if (keys_[i] == key) {
      values_[i] = value;
      return;
    }
    if (keys_[i] == kEmptyKey) {
      keys_[i] = key;
      values_[i] = value;
      ++used_;
      return;
    }
  }
}

void Memo::clear() {
  keys_.assign(1024, kEmptyKey);
  values_.assign(1024, 0);
  used_ = 0;
}

void Memo::grow() {
  std::vector<std::uint64_t> old_keys(keys_.size() * 2, kEmptyKey);
  std::vector<std::uint32_t> old_values(values_.size() * 2, 0);
  old_keys.swap(keys_);
  old_values.swap(values_);
  used_ = 0;
  for (std::size_t i = 0; i < old_keys.size(); ++i)
    if (old_keys[i] != kEmptyKey) insert(old_keys[i], old_values[i]);
}

BddManager::BddManager(std::size_t max_nodes) : max_nodes_(max_nodes), table_(1 << 12, kEmptySlot) {
  nodes_.reserve(1 << 11);
}

std::uint64_t BddManager::hash(std::uint32_t var, std::uint32_t lo, std::uint32_t hi) {
  return mix((std::uint64_t{var} * 0x9E3779B97F4A7C15ULL) ^ (std::uint64_t{lo} << 32) ^ hi);
}

void BddManager::rehash() {
  table_.assign(table_.size() * 2, kEmptySlot);
  const std::size_t mask = table_.size() - 1;
  for (std::uint32_t r = 0; r < nodes_.size(); ++r) {
    std::size_t i = hash(nodes_[r].var, nodes_[r].lo, nodes_[r].hi) & mask;
    while (table_[i] != kEmptySlot) i = (i + 1) & mask;
    table_[i] = r;
  }
}

BddRef BddManager::leaf(std::uint32_t value) { return node(kLeafVar, value, 0); }

BddRef BddManager::node(std::uint32_t var, BddRef lo, BddRef hi) {
  if (var != kLeafVar && lo == hi) return lo;
  const std::size_t mask = table_.size() - 1;
  std::size_t i = hash(var, lo, hi) & mask;
  for (; table_[i] != kEmptySlot; i = (i + 1) & mask) {
    const Node& n = nodes_[table_[i]];
    if (n.var == var && n.lo == lo && n.hi == hi) return table_[i];
  }
  if (nodes_.size() >= max_nodes_)
    throw BudgetExceeded("decision diagram exceeded " + std::to_string(max_nodes_) + " nodes", "");
  const auto r = static_cast<BddRef>(nodes_.size());
  nodes_.push_back({var, lo, hi});
  table_[i] = r;
  if (2 * nodes_.size() > table_.size()) rehash();
  return r;
}

std::vector<std::uint32_t> BddManager::leaves(BddRef a) const {
  std::vector<std::uint32_t> out;
  std::vector<BddRef> stack{a};
  std::unordered_set<BddRef> seen;
  while (!stack.empty()) {
    const BddRef r = stack.back();
    stack.pop_back();
    if (!seen.insert(r).second) continue;
    if (is_leaf(r)) {
      out.push_back(value(r));
      continue;
    }
    stack.push_back(hi(r));
    stack.push_back(lo(r));
  }
  return out;
}

std::vector<std::uint32_t> BddManager::support(BddRef a) const {
  std::vector<std::uint32_t> vars;
  std::vector<BddRef> stack{a};
  std::unordered_set<BddRef> seen;
  while (!stack.empty()) {
    const BddRef r = stack.back();
    stack.pop_back();
    if (is_leaf(r) || !seen.insert(r).second) continue;
    vars.push_back(var(r));
    stack.push_back(lo(r));
    stack.push_back(hi(r));
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

}  // namespace gridclass::automata
