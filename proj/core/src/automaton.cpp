#include "gridclass/automaton.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "gridclass/errors.hpp"

namespace gridclass::automata {

namespace {

void check_states(const Session& session, std::size_t n, const char* what) {
  if (n > session.max_states)
    throw BudgetExceeded(std::string(what) + " exceeded " + std::to_string(session.max_states) + " states", "");
}

void check_compatible(const Automaton& a, const Automaton& b) {
  if (a.session != b.session) throw std::invalid_argument("automata belong to different sessions");
  if (a.letters != b.letters) throw std::invalid_argument("automata have different alphabets");
}

bool combine(BoolOp op, bool x, bool y) {
  switch (op) {
    case BoolOp::conjunction: return x && y;
    case BoolOp::disjunction: return x || y;
    case BoolOp::implication: return !x || y;
    case BoolOp::equivalence: return x == y;
    case BoolOp::difference: return x && !y;
  }
  return false;
}

struct SetHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = v.size();
    for (auto x : v) h = h * 0x100000001B3ULL ^ (x + 0x9E3779B9u + (h << 6) + (h >> 2));
    return h;
  }
};

/// States reachable from 0 in breadth-first order.
std::vector<std::uint32_t> reachable(const Automaton& a) {
  std::vector<std::uint32_t> order{0};
  std::vector<char> seen(a.states(), 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::uint32_t t : a.bdd().leaves(a.delta[order[i]]))
      if (t != kNone && !seen[t]) {
        seen[t] = 1;
        order.push_back(t);
      }
  return order;
}

std::uint32_t variable_position(const Automaton& a, std::uint32_t bits, std::uint32_t var) {
  if (var == BddManager::kLeafVar) return bits + static_cast<std::uint32_t>(a.tracks.size());
  if (var < bits) return var;
  const auto it = std::lower_bound(a.tracks.begin(), a.tracks.end(), var);
  if (it == a.tracks.end() || *it != var) throw std::logic_error("diagram tests a variable outside the automaton");
  return bits + static_cast<std::uint32_t>(it - a.tracks.begin());
}

}  // namespace

std::uint32_t letter_bits(std::size_t letters) {
  std::uint32_t bits = 0;
  while ((std::size_t{1} << bits) < letters) ++bits;
  return bits;
}

BddRef valid_letters(BddManager& bdd, std::size_t letters) {
  return letter_predicate(bdd, letters, [](CellIndex) { return true; });
}

Automaton universal(std::shared_ptr<Session> session, std::size_t letters, std::vector<std::uint32_t> tracks) {
  BddManager& bdd = session->bdd;
  Automaton a = from_transitions(std::move(session), letters, std::move(tracks), 1, {1},
                                 [&](std::uint32_t) { return bdd.leaf(0); });
  a.minimal = true;
  return a;
}

Automaton empty_language(std::shared_ptr<Session> session, std::size_t letters, std::vector<std::uint32_t> tracks) {
  BddManager& bdd = session->bdd;
  Automaton a = from_transitions(std::move(session), letters, std::move(tracks), 1, {0},
                                 [&](std::uint32_t) { return bdd.leaf(0); });
  a.minimal = true;
  return a;
}

Automaton position_automaton(std::shared_ptr<Session> session, std::size_t letters, std::vector<std::uint32_t> tracks,
                             BddRef pred, bool all) {
  BddManager& bdd = session->bdd;
  Memo memo;
  // all: 0 is the accepting "so far so good" state, 1 the sink.
  // some: 0 waits for a witness, 1 has seen one.
  const BddRef from_start = bdd.map_leaves(
      pred, [&](std::uint32_t v) -> std::uint32_t { return all ? (v ? 0 : 1) : (v ? 1 : 0); }, memo);
  return from_transitions(std::move(session), letters, std::move(tracks), 2, {char(all), char(!all)},
                          [&](std::uint32_t q) { return q == 0 ? from_start : bdd.leaf(1); });
}

Automaton product(const Automaton& a, const Automaton& b, BoolOp op) {
  check_compatible(a, b);
  BddManager& bdd = a.bdd();
  Automaton r;
  r.session = a.session;
  r.letters = a.letters;
  std::set_union(a.tracks.begin(), a.tracks.end(), b.tracks.begin(), b.tracks.end(), std::back_inserter(r.tracks));

  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  auto id_of = [&](std::uint32_t p, std::uint32_t q) -> std::uint32_t {
    auto [it, inserted] = ids.try_emplace(pair_key(p, q), static_cast<std::uint32_t>(pairs.size()));
    if (inserted) {
      pairs.emplace_back(p, q);
      check_states(*a.session, pairs.size(), "product");
    }
    return it->second;
  };
  id_of(0, 0);
  Memo memo;
  auto leaf_op = [&](std::uint32_t x, std::uint32_t y) -> std::uint32_t {
    return x == kNone || y == kNone ? kNone : id_of(x, y);
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    r.delta.push_back(bdd.apply(a.delta[p], b.delta[q], leaf_op, memo));
    r.accepting.push_back(combine(op, a.accepting[p], b.accepting[q]));
  }
  return r;
}

Automaton complement(const Automaton& a) {
  Automaton r = a;
  for (auto& f : r.accepting) f = !f;
  return r;
}

Automaton project(const Automaton& a, const std::vector<std::uint32_t>& tracks) {
  std::vector<std::uint32_t> drop = tracks;
  std::sort(drop.begin(), drop.end());
  drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
  if (drop.empty()) return a;
  BddManager& bdd = a.bdd();

  std::vector<std::vector<std::uint32_t>> sets;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, SetHash> set_ids;
  auto set_id = [&](std::vector<std::uint32_t> s) -> std::uint32_t {
    auto [it, inserted] = set_ids.try_emplace(s, static_cast<std::uint32_t>(sets.size()));
    if (inserted) sets.push_back(std::move(s));
    return it->second;
  };
  auto unite = [&](std::uint32_t x, std::uint32_t y) -> std::uint32_t {
    if (x == kNone) return y;
    if (y == kNone || x == y) return x;
    std::vector<std::uint32_t> merged;
    const auto sx = sets[x], sy = sets[y];
    std::set_union(sx.begin(), sx.end(), sy.begin(), sy.end(), std::back_inserter(merged));
    return set_id(std::move(merged));
  };
  auto dropped = [&](std::uint32_t v) { return std::binary_search(drop.begin(), drop.end(), v); };

  Memo singleton_memo, eliminate_memo, unite_memo;
  std::vector<BddRef> projected(a.states(), kNone);
  auto projection = [&](std::uint32_t q) {
    if (projected[q] == kNone) {
      const BddRef sets_diagram = bdd.map_leaves(
          a.delta[q], [&](std::uint32_t t) { return t == kNone ? kNone : set_id({t}); }, singleton_memo);
      projected[q] = bdd.eliminate(sets_diagram, dropped, unite, eliminate_memo, unite_memo);
    }
    return projected[q];
  };

  Automaton r;
  r.session = a.session;
  r.letters = a.letters;
  std::set_difference(a.tracks.begin(), a.tracks.end(), drop.begin(), drop.end(), std::back_inserter(r.tracks));

  std::unordered_map<std::uint32_t, std::uint32_t> state_of_set;
  std::vector<std::uint32_t> set_of_state;
  auto state_id = [&](std::uint32_t s) -> std::uint32_t {
    if (s == kNone) return kNone;
    auto [it, inserted] = state_of_set.try_emplace(s, static_cast<std::uint32_t>(set_of_state.size()));
    if (inserted) {
      set_of_state.push_back(s);
      check_states(*a.session, set_of_state.size(), "subset construction");
    }
    return it->second;
  };
  state_id(set_id({0}));
  Memo relabel_memo;
  for (std::size_t i = 0; i < set_of_state.size(); ++i) {
    const std::vector<std::uint32_t> members = sets[set_of_state[i]];
    BddRef joined = projection(members.front());
    bool accept = a.accepting[members.front()];
    for (std::size_t k = 1; k < members.size(); ++k) {
      joined = bdd.apply(joined, projection(members[k]), unite, unite_memo);
      accept = accept || a.accepting[members[k]];
    }
    r.delta.push_back(bdd.map_leaves(joined, state_id, relabel_memo));
    r.accepting.push_back(accept);
  }
  return r;
}

Automaton minimize(const Automaton& a) {
  BddManager& bdd = a.bdd();
  const std::vector<std::uint32_t> order = reachable(a);
  const std::size_t m = order.size();
  std::vector<std::uint32_t> index(a.states(), kNone);
  for (std::size_t i = 0; i < m; ++i) index[order[i]] = static_cast<std::uint32_t>(i);

  std::vector<std::uint32_t> cls(m);
  std::size_t classes = 0;
  {
    std::uint32_t ids[2] = {kNone, kNone};
    for (std::size_t i = 0; i < m; ++i) {
      auto& id = ids[a.accepting[order[i]] ? 1 : 0];
      if (id == kNone) id = static_cast<std::uint32_t>(classes++);
      cls[i] = id;
    }
  }
  auto class_of = [&](std::uint32_t t) { return t == kNone ? kNone : cls[index[t]]; };
  while (true) {
    Memo memo;
    std::unordered_map<std::uint64_t, std::uint32_t> signatures;
    std::vector<std::uint32_t> next(m);
    for (std::size_t i = 0; i < m; ++i) {
      const BddRef sig = bdd.map_leaves(a.delta[order[i]], class_of, memo);
      next[i] = signatures.try_emplace(pair_key(cls[i], sig), static_cast<std::uint32_t>(signatures.size()))
                    .first->second;
    }
    if (signatures.size() == classes) break;
    classes = signatures.size();
    cls = std::move(next);
  }

  std::vector<std::uint32_t> representative(classes, kNone);
  for (std::size_t i = 0; i < m; ++i)
    if (representative[cls[i]] == kNone) representative[cls[i]] = static_cast<std::uint32_t>(i);

  Memo quotient_memo;
  std::vector<BddRef> quotient(classes);
  for (std::size_t c = 0; c < classes; ++c)
    quotient[c] = bdd.map_leaves(a.delta[order[representative[c]]], class_of, quotient_memo);

  std::vector<std::uint32_t> canon(classes, kNone), queue{cls[0]};
  canon[cls[0]] = 0;
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (std::uint32_t t : bdd.leaves(quotient[queue[k]]))
      if (t != kNone && canon[t] == kNone) {
        canon[t] = static_cast<std::uint32_t>(queue.size());
        queue.push_back(t);
      }

  Automaton r;
  r.session = a.session;
  r.letters = a.letters;
  r.tracks = a.tracks;
  r.delta.resize(classes);
  r.accepting.resize(classes);
  r.minimal = true;
  Memo renumber_memo;
  for (std::size_t c = 0; c < classes; ++c) {
    r.delta[canon[c]] = bdd.map_leaves(
        quotient[c], [&](std::uint32_t t) { return t == kNone ? kNone : canon[t]; }, renumber_memo);
    r.accepting[canon[c]] = a.accepting[order[representative[c]]];
  }
  return r;
}

Automaton rename_tracks(const Automaton& a, const std::vector<std::uint32_t>& from,
                        const std::vector<std::uint32_t>& to) {
  if (from.size() != to.size()) throw std::invalid_argument("track renaming needs equal lengths");
  auto map = [&](std::uint32_t v) {
    if (v < kFirstTrack) return v;
    const auto it = std::lower_bound(from.begin(), from.end(), v);
    if (it == from.end() || *it != v) throw std::logic_error("track renaming misses a variable");
    return to[static_cast<std::size_t>(it - from.begin())];
  };
  Automaton r = a;
  Memo memo;
  for (auto& d : r.delta) d = a.bdd().rename(d, map, memo);
  r.tracks.clear();
  for (std::uint32_t t : a.tracks) r.tracks.push_back(map(t));
  return r;
}

Automaton restrict_symbols(const Automaton& a, BddRef universe) {
  Automaton r = a;
  Memo memo;
  for (auto& d : r.delta)
    d = a.bdd().apply(universe, d, [](std::uint32_t u, std::uint32_t t) { return u ? t : kNone; }, memo);
  r.minimal = false;
  return r;
}

Automaton extend_symbols(const Automaton& a, BddRef universe) {
  Automaton r = a;
  BddManager& bdd = a.bdd();
  const auto sink = static_cast<std::uint32_t>(a.states());
  Memo memo;
  for (auto& d : r.delta)
    d = bdd.apply(
        universe, d, [&](std::uint32_t u, std::uint32_t t) { return !u ? kNone : (t == kNone ? sink : t); }, memo);
  Memo sink_memo;
  r.delta.push_back(bdd.map_leaves(universe, [&](std::uint32_t u) { return u ? sink : kNone; }, sink_memo));
  r.accepting.push_back(0);
  r.minimal = false;
  return r;
}

BddRef symbol_universe(const Automaton& a) {
  Memo memo;
  return a.bdd().map_leaves(a.delta[0], [](std::uint32_t t) -> std::uint32_t { return t == kNone ? 0 : 1; }, memo);
}

bool is_universal(const Automaton& a) {
  for (std::uint32_t q : reachable(a))
    if (!a.accepting[q]) return false;
  return true;
}

bool is_empty(const Automaton& a) {
  for (std::uint32_t q : reachable(a))
    if (a.accepting[q]) return false;
  return true;
}

LanguageLength finite_language_max_length(const Automaton& a) {
  const std::size_t n = a.states();
  std::vector<std::vector<std::uint32_t>> succ(n), pred(n);
  const std::vector<std::uint32_t> order = reachable(a);
  std::vector<char> useful(n, 0);
  for (std::uint32_t q : order) {
    for (std::uint32_t t : a.bdd().leaves(a.delta[q]))
      if (t != kNone) {
        succ[q].push_back(t);
        pred[t].push_back(q);
      }
  }
  std::vector<char> reach(n, 0);
  for (std::uint32_t q : order) reach[q] = 1;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t q : order)
    if (a.accepting[q]) {
      useful[q] = 1;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    const std::uint32_t q = stack.back();
    stack.pop_back();
    for (std::uint32_t p : pred[q])
      if (reach[p] && !useful[p]) {
        useful[p] = 1;
        stack.push_back(p);
      }
  }
  if (!useful[0]) return {};

  // Depth-first search over useful states: a back edge means a cycle.
  enum : char { white, grey, black };
  std::vector<char> colour(n, white);
  std::vector<std::uint32_t> post;
  std::vector<std::pair<std::uint32_t, std::size_t>> frames{{0, 0}};
  colour[0] = grey;
  while (!frames.empty()) {
    auto& [q, k] = frames.back();
    if (k < succ[q].size()) {
      const std::uint32_t t = succ[q][k++];
      if (!useful[t]) continue;
      if (colour[t] == grey) return {LanguageLength::Kind::infinite, 0};
      if (colour[t] == white) {
        colour[t] = grey;
        frames.emplace_back(t, 0);
      }
    } else {
      colour[q] = black;
      post.push_back(q);
      frames.pop_back();
    }
  }
  std::vector<long long> longest(n, -1);
  longest[0] = 0;
  std::size_t best = 0;
  for (auto it = post.rbegin(); it != post.rend(); ++it) {
    const std::uint32_t q = *it;
    if (longest[q] < 0) continue;
    if (a.accepting[q]) best = std::max(best, static_cast<std::size_t>(longest[q]));
    for (std::uint32_t t : succ[q])
      if (useful[t]) longest[t] = std::max(longest[t], longest[q] + 1);
  }
  return {LanguageLength::Kind::finite, best};
}

bool isomorphic(const Automaton& a, const Automaton& b) {
  if (a.letters != b.letters || a.tracks != b.tracks || a.states() != b.states() || a.accepting != b.accepting)
    return false;
  if (a.session == b.session) return a.delta == b.delta;
  const BddManager& x = a.bdd();
  const BddManager& y = b.bdd();
  std::unordered_set<std::uint64_t> equal;
  auto same = [&](auto&& self, BddRef p, BddRef q) -> bool {
    if (x.is_leaf(p) || y.is_leaf(q)) return x.is_leaf(p) && y.is_leaf(q) && x.value(p) == y.value(q);
    if (equal.count(pair_key(p, q))) return true;
    if (x.var(p) != y.var(q) || !self(self, x.lo(p), y.lo(q)) || !self(self, x.hi(p), y.hi(q))) return false;
    equal.insert(pair_key(p, q));
    return true;
  };
  for (std::size_t q = 0; q < a.states(); ++q)
    if (!same(same, a.delta[q], b.delta[q])) return false;
  return true;
}

std::vector<std::pair<std::uint32_t, BigInt>> weighted_successors(const Automaton& a, std::uint32_t state) {
  const BddManager& bdd = a.bdd();
  const std::uint32_t bits = letter_bits(a.letters);
  using Counts = std::map<std::uint32_t, BigInt>;
  std::unordered_map<BddRef, Counts> memo;
  auto position = [&](BddRef r) { return variable_position(a, bits, bdd.var(r)); };
  auto count = [&](auto&& self, BddRef r) -> const Counts& {
    if (auto it = memo.find(r); it != memo.end()) return it->second;
    Counts out;
    if (bdd.is_leaf(r)) {
      if (bdd.value(r) != kNone) out[bdd.value(r)] = 1;
    } else {
      const std::uint32_t here = position(r);
      for (BddRef child : {bdd.lo(r), bdd.hi(r)}) {
        const Counts& sub = self(self, child);
        const std::uint32_t skipped = position(child) - here - 1;
        for (const auto& [t, c] : sub) out[t] += c << skipped;
      }
    }
    return memo.emplace(r, std::move(out)).first->second;
  };
  const BddRef root = a.delta[state];
  const std::uint32_t skipped = position(root);
  std::vector<std::pair<std::uint32_t, BigInt>> result;
  for (const auto& [t, c] : count(count, root)) result.emplace_back(t, c << skipped);
  return result;
}

std::vector<BigInt> count_sequence(const Automaton& a, std::size_t max_length) {
  const std::size_t n = a.states();
  std::vector<std::vector<std::pair<std::uint32_t, BigInt>>> succ(n);
  for (std::uint32_t q : reachable(a)) succ[q] = weighted_successors(a, q);
  std::vector<BigInt> ways(n), next(n), out;
  ways[0] = 1;
  for (std::size_t len = 0;; ++len) {
    BigInt total = 0;
    for (std::size_t q = 0; q < n; ++q)
      if (a.accepting[q]) total += ways[q];
    out.push_back(total);
    if (len == max_length) break;
    std::fill(next.begin(), next.end(), BigInt(0));
    for (std::size_t q = 0; q < n; ++q) {
      if (ways[q] == 0) continue;
      for (const auto& [t, c] : succ[q]) next[t] += ways[q] * c;
    }
    ways.swap(next);
  }
  return out;
}

BigInt count_words(const Automaton& a, std::size_t length) { return count_sequence(a, length).back(); }

std::uint32_t step(const Automaton& a, std::uint32_t state, CellIndex letter, const std::vector<char>& track_bits) {
  if (state == kNone) return kNone;
  const std::uint32_t bits = letter_bits(a.letters);
  if (letter >= a.letters) return kNone;
  return a.bdd().evaluate(a.delta[state], [&](std::uint32_t var) -> bool {
    if (var < bits) return (letter >> (bits - 1 - var)) & 1;
    const auto it = std::lower_bound(a.tracks.begin(), a.tracks.end(), var);
    const auto t = static_cast<std::size_t>(it - a.tracks.begin());
    return t < track_bits.size() && track_bits[t];
  });
}

bool accepts(const Automaton& a, const Word& w) { return accepts(a, w, {}); }

bool accepts(const Automaton& a, const Word& w, const std::vector<std::vector<char>>& track_columns) {
  std::uint32_t q = 0;
  std::vector<char> bits(a.tracks.size(), 0);
  for (std::size_t i = 0; i < w.size() && q != kNone; ++i) {
    for (std::size_t t = 0; t < bits.size(); ++t) bits[t] = t < track_columns.size() ? track_columns[t].at(i) : 0;
    q = step(a, q, w[i], bits);
  }
  return q != kNone && a.accepting[q];
}

std::vector<Word> enumerate_words(const Automaton& a, std::size_t length) {
  if (!a.tracks.empty()) throw std::invalid_argument("enumerate_words needs an automaton without tracks");
  const std::size_t n = a.states();
  std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(a.letters));
  for (std::size_t q = 0; q < n; ++q)
    for (CellIndex c = 0; c < a.letters; ++c) table[q][c] = step(a, static_cast<std::uint32_t>(q), c);
  // alive[k][q]: some word of length k leads from q to acceptance.
  std::vector<std::vector<char>> alive(length + 1, std::vector<char>(n, 0));
  for (std::size_t q = 0; q < n; ++q) alive[0][q] = a.accepting[q];
  for (std::size_t k = 1; k <= length; ++k)
    for (std::size_t q = 0; q < n; ++q)
      for (std::uint32_t t : table[q])
        if (t != kNone && alive[k - 1][t]) {
          alive[k][q] = 1;
          break;
        }
  std::vector<Word> out;
  Word w;
  auto walk = [&](auto&& self, std::uint32_t q) -> void {
    const std::size_t left = length - w.size();
    if (!alive[left][q]) return;
    if (left == 0) {
      out.push_back(w);
      return;
    }
    for (CellIndex c = 0; c < a.letters; ++c) {
      const std::uint32_t t = table[q][c];
      if (t == kNone) continue;
      w.push_back(c);
      self(self, t);
      w.pop_back();
    }
  };
  walk(walk, 0);
  return out;
}

namespace {

std::string letter_ranges(const std::vector<CellIndex>& letters) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j + 1 < letters.size() && letters[j + 1] == letters[j] + 1) ++j;
    if (i) out << ',';
    out << letters[i] + 1;
    if (j > i) out << '-' << letters[j] + 1;
    i = j + 1;
  }
  out << '}';
  return out.str();
}

}  // namespace

std::string dump(const Automaton& a) {
  const BddManager& bdd = a.bdd();
  const std::uint32_t bits = letter_bits(a.letters);
  std::ostringstream out;
  out << "automaton letters=" << a.letters << " states=" << a.states() << " tracks=" << a.tracks.size() << '\n';
  out << "accepting:";
  for (std::size_t q = 0; q < a.states(); ++q)
    if (a.accepting[q]) out << ' ' << q;
  out << '\n';
  std::vector<int> assignment(bits + a.tracks.size(), -1);
  for (std::size_t q = 0; q < a.states(); ++q) {
    out << "state " << q << ":\n";
    auto walk = [&](auto&& self, BddRef r) -> void {
      if (bdd.is_leaf(r)) {
        if (bdd.value(r) == kNone) return;
        std::vector<CellIndex> letters;
        for (CellIndex c = 0; c < a.letters; ++c) {
          bool ok = true;
          for (std::uint32_t v = 0; v < bits && ok; ++v)
            ok = assignment[v] < 0 || assignment[v] == static_cast<int>((c >> (bits - 1 - v)) & 1);
          if (ok) letters.push_back(c);
        }
        out << "  " << letter_ranges(letters);
        if (!a.tracks.empty()) {
          out << ' ';
          for (std::size_t t = 0; t < a.tracks.size(); ++t) {
            const int v = assignment[bits + t];
            out << (v < 0 ? '-' : static_cast<char>('0' + v));
          }
        }
        out << " -> " << bdd.value(r) << '\n';
        return;
      }
      const std::uint32_t pos = variable_position(a, bits, bdd.var(r));
      assignment[pos] = 0;
      self(self, bdd.lo(r));
      assignment[pos] = 1;
      self(self, bdd.hi(r));
      assignment[pos] = -1;
    };
    walk(walk, a.delta[q]);
  }
  return out.str();
}

}  // namespace gridclass::automata
