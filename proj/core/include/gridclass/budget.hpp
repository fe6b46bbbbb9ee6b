#pragma once

#include <cstddef>

namespace gridclass {

/// Resource caps shared by the compiler, the model checker and the analyses.
struct Budget {
  std::size_t max_states = 250'000;          // per intermediate automaton
  std::size_t max_bdd_nodes = 40'000'000;    // per compilation session
  std::size_t max_formula_nodes = 4'000'000; // interpreted formula size
  std::size_t max_model_size = 16;           // model checker domain size
  std::size_t max_set_depth = 24;            // nested set quantifiers in the model checker
  std::size_t max_letters = 1u << 16;        // alphabet size accepted by the compiler
  double max_seconds = 600;                  // wall clock per compilation, 0 for none

  /// Defaults overridden by GRIDCLASS_MAX_STATES, GRIDCLASS_MAX_BDD_NODES,
  /// GRIDCLASS_MAX_FORMULA_NODES, GRIDCLASS_MAX_MODEL_SIZE and
  /// GRIDCLASS_MAX_SECONDS when set.
  static Budget from_environment();
};

}  // namespace gridclass
