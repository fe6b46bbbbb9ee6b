#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "gridclass/automaton.hpp"
#include "gridclass/budget.hpp"
#include "gridclass/formula.hpp"

namespace gridclass::automata {

struct CompileStats {
  std::size_t nodes = 0;         // subformulas compiled
  std::size_t cache_hits = 0;
  std::size_t peak_states = 0;   // largest intermediate automaton
  std::size_t restrictions = 0;  // set-quantifier blocks narrowed by a local conjunct
};

/// Translates word formulas (signature {<, U_1..U_n}) into minimal
/// automata. Free variables become tracks (see free_tracks()); element
/// variables are singleton tracks.
class Compiler {
 public:
  explicit Compiler(std::size_t letters, const Budget& budget = {});

  /// Free variables in order of first occurrence.
  Automaton compile(const mso::FormulaPtr& f);
  Automaton compile(const mso::FormulaPtr& f, const std::vector<mso::FreeVariable>& free);

  /// Track of each free variable of the last compiled formula, in order.
  const std::vector<std::uint32_t>& free_tracks() const noexcept { return free_tracks_; }
  const std::shared_ptr<Session>& session() const noexcept { return session_; }
  const CompileStats& stats() const noexcept { return stats_; }
  std::size_t letters() const noexcept { return letters_; }

 private:
  struct Binding {
    std::string name;
    std::uint32_t track;
    mso::Sort sort;
  };

  Automaton node(const mso::FormulaPtr& f);
  Automaton build(const mso::FormulaPtr& f);
  Automaton quantifier_block(const mso::FormulaPtr& f);
  Automaton atom(const mso::Formula& f);
  Automaton local(const mso::Formula& f, const std::string& x);
  Automaton singleton(std::uint32_t track);
  Automaton finish(Automaton a);

  const Binding& lookup(const std::string& name) const;
  const std::vector<std::string>& free_names(const mso::Formula& f);
  std::vector<std::uint32_t> free_tracks(const mso::Formula& f);
  std::vector<std::uint32_t> free_element_tracks(const mso::Formula& f);
  BddRef universe(const std::vector<std::uint32_t>& tracks);

  bool is_local(const mso::Formula& f, const std::string& x) const;
  BddRef predicate(const mso::Formula& f, const std::string& x);
  std::vector<BddRef> local_restrictions(const mso::FormulaPtr& body, bool negated);

  std::string cache_key(const mso::Formula& f, const std::vector<std::uint32_t>& tracks, BddRef universe);
  std::size_t size_of(const mso::Formula& f);

  std::size_t letters_;
  Budget budget_;
  std::shared_ptr<Session> session_;
  CompileStats stats_;
  std::vector<Binding> scope_;
  std::vector<std::uint32_t> free_tracks_;
  BddRef restriction_;  // symbols admissible in the current context (0/1 leaves)
  bool restricted_ = false;
  BddRef valid_;
  std::chrono::steady_clock::time_point deadline_;
  std::unordered_map<const mso::Formula*, std::vector<std::string>> free_names_;
  std::unordered_map<const mso::Formula*, std::size_t> sizes_;
  std::unordered_map<std::string, Automaton> cache_;
};

/// One-shot compilation in a fresh session.
Automaton compile(const mso::FormulaPtr& f, std::size_t letters, const Budget& budget = {});

}  // namespace gridclass::automata
