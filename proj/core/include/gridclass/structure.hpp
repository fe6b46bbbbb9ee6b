#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "gridclass/budget.hpp"
#include "gridclass/formula.hpp"
#include "gridclass/grid.hpp"
#include "gridclass/permutation.hpp"

namespace gridclass::mso {

/// A finite structure for one of the three built-in signatures. Element e
/// has rank `first[e]` in <1 (or in the word order) and `second[e]` in <2;
/// `label[e]` is its cell or letter.
struct FiniteStructure {
  Signature signature;
  std::size_t size = 0;
  std::vector<int> first;
  std::vector<int> second;
  std::vector<std::uint32_t> label;

  static FiniteStructure from_permutation(const Permutation& p);
  static FiniteStructure from_gridded(const GriddedPermutation& g, std::size_t cells);
  static FiniteStructure from_word(const Word& w, std::size_t letters);
};

/// Values for free variables: an element index or a set of element indices.
using Value = std::variant<std::size_t, std::vector<std::size_t>>;
using Environment = std::map<std::string, Value>;

/// Standard MSO satisfaction. Set quantifiers range over all subsets; blocks
/// of them are searched element by element with three-valued pruning.
/// Throws SignatureError on atoms outside the structure's signature or
/// unbound variables, BudgetExceeded above `budget.max_model_size` elements
/// or `budget.max_set_depth` nested set variables.
bool model_check(const FiniteStructure& st, const FormulaPtr& f, const Environment& env = {},
                 const Budget& budget = {});

bool model_check(const Permutation& p, const FormulaPtr& f, const Budget& budget = {});

}  // namespace gridclass::mso
