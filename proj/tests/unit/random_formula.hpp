#pragma once

#include <random>
#include <string>
#include <vector>

#include "gridclass/formula.hpp"

namespace fixtures {

// Random MSO sentences over the word signature {<, U_1..U_letters}. Depth
// counts connective and quantifier nesting; atoms only use bound names.
class RandomSentences {
 public:
  RandomSentences(std::size_t letters, std::uint64_t seed) : letters_(letters), rng_(seed) {}

  gridclass::mso::FormulaPtr next(int depth) {
    elements_.clear();
    sets_.clear();
    return make(depth);
  }

 private:
  using FormulaPtr = gridclass::mso::FormulaPtr;

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  FormulaPtr atom() {
    namespace m = gridclass::mso;
    if (elements_.empty()) return pick(2) ? m::top() : m::bottom();
    const auto& x = elements_[pick(elements_.size())];
    const auto& y = elements_[pick(elements_.size())];
    switch (pick(sets_.empty() ? 3 : 4)) {
      case 0: return m::lt(x, y);
      case 1: return m::eq(x, y);
      case 2: return m::letter(pick(letters_), x);
      default: return m::member(x, sets_[pick(sets_.size())]);
    }
  }

  FormulaPtr quantified(int depth, bool set) {
    namespace m = gridclass::mso;
    auto& names = set ? sets_ : elements_;
    const std::string name = (set ? "X" : "x") + std::to_string(names.size());
    names.push_back(name);
    auto body = make(depth - 1);
    names.pop_back();
    if (set) return pick(2) ? m::exists_set(name, body) : m::forall_set(name, body);
    return pick(2) ? m::exists(name, body) : m::forall(name, body);
  }

  // Without an element variable in scope only quantifiers can say anything.
  FormulaPtr make(int depth) {
    namespace m = gridclass::mso;
    if (depth == 0) return atom();
    if (elements_.empty()) return quantified(depth, pick(4) == 0);
    switch (pick(10)) {
      case 0: return atom();
      case 1: return m::negate(make(depth - 1));
      case 2: return m::conj({make(depth - 1), make(depth - 1)});
      case 3: return m::disj({make(depth - 1), make(depth - 1)});
      case 4: return m::implies(make(depth - 1), make(depth - 1));
      case 5: return m::iff(make(depth - 1), make(depth - 1));
      case 6:
      case 7:
      case 8: return quantified(depth, false);
      default: return quantified(depth, true);
    }
  }

  std::size_t letters_;
  std::mt19937_64 rng_;
  std::vector<std::string> elements_;
  std::vector<std::string> sets_;
};

}  // namespace fixtures
