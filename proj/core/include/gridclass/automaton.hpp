#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gridclass/bdd.hpp"
#include "gridclass/grid.hpp"

namespace gridclass::automata {

using BigInt = boost::multiprecision::cpp_int;

/// Leaf value for symbols outside the automaton's symbol universe (invalid
/// letter codes, or track patterns excluded by a context restriction).
inline constexpr std::uint32_t kNone = 0xFFFFFFFFu;

/// Decision-diagram variables: letter bits come first (most significant bit
/// at variable 0), tracks use ids from kFirstTrack upwards.
inline constexpr std::uint32_t kFirstTrack = 64;

/// Number of bits needed to encode `letters` letter codes.
std::uint32_t letter_bits(std::size_t letters);

/// Shared diagram store plus the state cap applied to every construction.
struct Session {
  explicit Session(std::size_t max_states = 250'000, std::size_t max_nodes = 40'000'000)
      : bdd(max_nodes), max_states(max_states) {}
  BddManager bdd;
  std::size_t max_states;
};

/// Complete deterministic automaton over symbols (letter, track bits). The
/// initial state is 0. Each `delta[q]` is a diagram whose leaves are target
/// states, or kNone on symbols outside the universe; the universe is the
/// same for every state.
struct Automaton {
  std::shared_ptr<Session> session;
  std::size_t letters = 0;
  std::vector<std::uint32_t> tracks;  // ascending variable ids
  std::vector<BddRef> delta;
  std::vector<char> accepting;
  bool minimal = false;

  std::size_t states() const { return delta.size(); }
  BddManager& bdd() const { return session->bdd; }
};

// Symbol predicates (diagrams with 0/1 leaves) --------------------------------

/// Letters satisfying `pred`; codes >= letters map to 0.
template <class Pred>
BddRef letter_predicate(BddManager& bdd, std::size_t letters, Pred&& pred);
/// Every valid letter.
BddRef valid_letters(BddManager& bdd, std::size_t letters);

// Constructions -------------------------------------------------------------

/// Accepts every word over the valid symbols (1 state).
Automaton universal(std::shared_ptr<Session> session, std::size_t letters, std::vector<std::uint32_t> tracks = {});
/// Accepts nothing (1 state).
Automaton empty_language(std::shared_ptr<Session> session, std::size_t letters,
                         std::vector<std::uint32_t> tracks = {});
/// Explicit construction: `next(q)` returns the transition diagram of q.
/// Leaves that are valid letters must already be states; invalid letter
/// codes are mapped to kNone automatically.
template <class Next>
Automaton from_transitions(std::shared_ptr<Session> session, std::size_t letters, std::vector<std::uint32_t> tracks,
                           std::size_t states, std::vector<char> accepting, Next&& next);
/// Accepts the words in which every position (all = true) or some position
/// (all = false) carries a symbol satisfying `pred`.
Automaton position_automaton(std::shared_ptr<Session> session, std::size_t letters,
                             std::vector<std::uint32_t> tracks, BddRef pred, bool all);

enum class BoolOp { conjunction, disjunction, implication, equivalence, difference };

Automaton product(const Automaton& a, const Automaton& b, BoolOp op);
Automaton complement(const Automaton& a);
/// Existentially quantifies the given tracks; the result is deterministic.
Automaton project(const Automaton& a, const std::vector<std::uint32_t>& tracks);
/// Canonical minimal automaton: unreachable states removed, equivalent
/// states merged, states numbered in breadth-first order.
Automaton minimize(const Automaton& a);

/// Renames tracks `from[i]` to `to[i]`; both ascending, so order is kept.
Automaton rename_tracks(const Automaton& a, const std::vector<std::uint32_t>& from,
                        const std::vector<std::uint32_t>& to);

/// Sends symbols with predicate value 0 to kNone.
Automaton restrict_symbols(const Automaton& a, BddRef universe);
/// Enlarges the universe to `universe`; new symbols go to a rejecting sink.
Automaton extend_symbols(const Automaton& a, BddRef universe);

/// Symbol universe as a 0/1 predicate.
BddRef symbol_universe(const Automaton& a);

// Decisions -----------------------------------------------------------------

bool is_universal(const Automaton& a);
bool is_empty(const Automaton& a);

struct LanguageLength {
  enum class Kind { empty, finite, infinite } kind = Kind::empty;
  std::size_t max_length = 0;  // meaningful for finite
};
LanguageLength finite_language_max_length(const Automaton& a);

/// Structural equality of canonical automata (use after minimize).
bool isomorphic(const Automaton& a, const Automaton& b);

// Words ---------------------------------------------------------------------

/// Successor states with the number of symbols leading to each.
std::vector<std::pair<std::uint32_t, BigInt>> weighted_successors(const Automaton& a, std::uint32_t state);

BigInt count_words(const Automaton& a, std::size_t length);
/// counts[n] for n = 0..max_length.
std::vector<BigInt> count_sequence(const Automaton& a, std::size_t max_length);
/// Accepted words of the given length in lexicographic order (no tracks).
std::vector<Word> enumerate_words(const Automaton& a, std::size_t length);

std::uint32_t step(const Automaton& a, std::uint32_t state, CellIndex letter, const std::vector<char>& track_bits = {});
bool accepts(const Automaton& a, const Word& w);
/// `track_columns[t][i]` is the bit of track a.tracks[t] at position i.
bool accepts(const Automaton& a, const Word& w, const std::vector<std::vector<char>>& track_columns);

/// Text listing of states, symbol classes and transitions.
std::string dump(const Automaton& a);

// Template definitions --------------------------------------------------------

namespace detail {
template <class Pred>
BddRef letter_predicate_rec(BddManager& bdd, std::size_t letters, std::uint32_t bits, std::uint32_t depth,
                            std::size_t prefix, Pred& pred) {
  const std::size_t first = prefix << (bits - depth);
  if (first >= letters) return bdd.leaf(0);
  if (depth == bits) return bdd.leaf(pred(static_cast<CellIndex>(prefix)) ? 1 : 0);
  const BddRef lo = letter_predicate_rec(bdd, letters, bits, depth + 1, prefix << 1, pred);
  const BddRef hi = letter_predicate_rec(bdd, letters, bits, depth + 1, (prefix << 1) | 1, pred);
  return bdd.node(depth, lo, hi);
}
}  // namespace detail

template <class Pred>
BddRef letter_predicate(BddManager& bdd, std::size_t letters, Pred&& pred) {
  return detail::letter_predicate_rec(bdd, letters, letter_bits(letters), 0, 0, pred);
}

template <class Next>
Automaton from_transitions(std::shared_ptr<Session> session, std::size_t letters, std::vector<std::uint32_t> tracks,
                           std::size_t states, std::vector<char> accepting, Next&& next) {
  Automaton a;
  a.session = std::move(session);
  a.letters = letters;
  a.tracks = std::move(tracks);
  a.accepting = std::move(accepting);
  BddManager& bdd = a.session->bdd;
  const BddRef valid = valid_letters(bdd, letters);
  Memo memo;
  for (std::size_t q = 0; q < states; ++q) {
    memo.clear();
    a.delta.push_back(
        bdd.apply(valid, next(static_cast<std::uint32_t>(q)),
                  [](std::uint32_t v, std::uint32_t t) { return v ? t : kNone; }, memo));
  }
  return a;
}

}  // namespace gridclass::automata
