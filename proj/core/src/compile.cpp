#include "gridclass/compile.hpp"

#include <algorithm>
#include <array>

#include "gridclass/errors.hpp"

namespace gridclass::automata {

using mso::Formula;
using mso::FormulaPtr;
using mso::Kind;
using mso::Sort;

namespace {

constexpr std::uint32_t kCanonicalTrack = 1u << 30;
constexpr std::size_t kCacheableSize = 4000;
// Variables bound deeper get smaller ids, so a diagram tests the innermost
// (usually element) tracks first and outer set tracks only where needed.
constexpr std::uint32_t kDeepest = 1u << 20;

std::uint32_t track_at_depth(std::size_t depth) {
  if (depth >= kDeepest) throw BudgetExceeded("quantifier nesting too deep", "");
  return kFirstTrack + kDeepest - static_cast<std::uint32_t>(depth);
}

std::vector<std::uint32_t> canonical_tracks(std::size_t n) {
  std::vector<std::uint32_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = kCanonicalTrack + static_cast<std::uint32_t>(i);
  return out;
}

std::string abbreviate(std::string text) {
  constexpr std::size_t limit = 240;
  if (text.size() > limit) text = text.substr(0, limit) + " ...";
  return text;
}

std::uint32_t bool_and(std::uint32_t a, std::uint32_t b) { return a & b; }
std::uint32_t bool_or(std::uint32_t a, std::uint32_t b) { return a | b; }

/// Diagram over two tracks; `leaves[2 * bx + by]` is the target for bits (bx, by).
BddRef two_tracks(BddManager& bdd, std::uint32_t tx, std::uint32_t ty, const std::array<std::uint32_t, 4>& leaves) {
  auto l = [&](int bx, int by) { return bdd.leaf(leaves[2 * bx + by]); };
  if (tx < ty) return bdd.node(tx, bdd.node(ty, l(0, 0), l(0, 1)), bdd.node(ty, l(1, 0), l(1, 1)));
  return bdd.node(ty, bdd.node(tx, l(0, 0), l(1, 0)), bdd.node(tx, l(0, 1), l(1, 1)));
}

}  // namespace

Compiler::Compiler(std::size_t letters, const Budget& budget)
    : letters_(letters),
      budget_(budget),
      session_(std::make_shared<Session>(budget.max_states, budget.max_bdd_nodes)) {
  if (letters > budget.max_letters)
    throw BudgetExceeded("alphabet of " + std::to_string(letters) + " letters exceeds the limit of " +
                             std::to_string(budget.max_letters),
                         "");
  valid_ = valid_letters(session_->bdd, letters);
  restriction_ = valid_;
}

Automaton Compiler::compile(const FormulaPtr& f) { return compile(f, mso::free_variables(f)); }

Automaton Compiler::compile(const FormulaPtr& f, const std::vector<mso::FreeVariable>& free) {
  mso::Signature::words(letters_).check(f);
  // Keyed by node address, which a later formula may reuse.
  free_names_.clear();
  sizes_.clear();
  scope_.clear();
  deadline_ = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                      std::chrono::duration<double>(budget_.max_seconds));
  restriction_ = valid_;
  restricted_ = false;
  std::vector<std::uint32_t> tracks;
  for (std::size_t i = 0; i < free.size(); ++i) {
    scope_.push_back({free[i].name, track_at_depth(i), free[i].sort});
    tracks.push_back(scope_.back().track);
  }
  free_tracks_ = tracks;
  std::sort(tracks.begin(), tracks.end());
  Automaton a = node(f);
  for (const auto& b : scope_)
    if (b.sort == Sort::element) a = minimize(product(a, singleton(b.track), BoolOp::conjunction));
  a.tracks = tracks;
  return a;
}

const Compiler::Binding& Compiler::lookup(const std::string& name) const {
  for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
    if (it->name == name) return *it;
  throw InputError("variable '" + name + "' is neither bound nor declared free");
}

const std::vector<std::string>& Compiler::free_names(const Formula& f) {
  if (auto it = free_names_.find(&f); it != free_names_.end()) return it->second;
  std::vector<std::string> names;
  switch (f.kind()) {
    case Kind::truth:
    case Kind::falsity: break;
    case Kind::cell:
    case Kind::letter: names.push_back(f.first()); break;
    case Kind::order1:
    case Kind::order2:
    case Kind::word_order:
    case Kind::equal:
    case Kind::member:
      names.push_back(f.first());
      names.push_back(f.second());
      break;
    case Kind::exists:
    case Kind::forall:
      for (const auto& n : free_names(*f.child()))
        if (n != f.variable()) names.push_back(n);
      break;
    default:
      for (const auto& c : f.children()) {
        const auto& sub = free_names(*c);
        names.insert(names.end(), sub.begin(), sub.end());
      }
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return free_names_.emplace(&f, std::move(names)).first->second;
}

std::vector<std::uint32_t> Compiler::free_tracks(const Formula& f) {
  std::vector<std::uint32_t> out;
  for (const auto& n : free_names(f)) out.push_back(lookup(n).track);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> Compiler::free_element_tracks(const Formula& f) {
  std::vector<std::uint32_t> out;
  for (const auto& n : free_names(f)) {
    const Binding& b = lookup(n);
    if (b.sort == Sort::element) out.push_back(b.track);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Compiler::size_of(const Formula& f) {
  if (auto it = sizes_.find(&f); it != sizes_.end()) return it->second;
  std::size_t n = 1;
  for (const auto& c : f.children()) n += size_of(*c);
  sizes_.emplace(&f, n);
  return n;
}

BddRef Compiler::universe(const std::vector<std::uint32_t>& tracks) {
  if (!restricted_) return valid_;
  Memo memo, merge_memo;
  return session_->bdd.eliminate(
      restriction_,
      [&](std::uint32_t v) { return v >= kFirstTrack && !std::binary_search(tracks.begin(), tracks.end(), v); },
      bool_or, memo, merge_memo);
}

std::string Compiler::cache_key(const Formula& f, const std::vector<std::uint32_t>& tracks, BddRef universe) {
  std::vector<std::pair<std::string, std::string>> names;
  for (const auto& n : free_names(f)) {
    const std::uint32_t t = lookup(n).track;
    const auto rank = std::lower_bound(tracks.begin(), tracks.end(), t) - tracks.begin();
    names.emplace_back(n, "#" + std::to_string(rank));
  }
  auto resolve = [&](const std::string& n) -> const std::string& {
    for (auto it = names.rbegin(); it != names.rend(); ++it)
      if (it->first == n) return it->second;
    throw InputError("variable '" + n + "' is neither bound nor declared free");
  };
  std::string key;
  auto write = [&](auto&& self, const Formula& g) -> void {
    key += static_cast<char>('a' + static_cast<int>(g.kind()));
    if (g.is_atom()) {
      if (g.kind() == Kind::cell || g.kind() == Kind::letter) key += std::to_string(g.label());
      if (!g.first().empty()) key += ' ' + resolve(g.first());
      if (!g.second().empty()) key += ' ' + resolve(g.second());
      key += ';';
      return;
    }
    if (g.is_quantifier()) {
      names.emplace_back(g.variable(), "@" + std::to_string(names.size()));
      key += g.sort() == Sort::set ? 'S' : 'E';
      self(self, *g.child());
      names.pop_back();
      return;
    }
    key += '(';
    for (const auto& c : g.children()) self(self, *c);
    key += ')';
  };
  write(write, f);
  if (restricted_) {
    const auto canon = canonical_tracks(tracks.size());
    Memo memo;
    const BddRef u = session_->bdd.rename(
        universe,
        [&](std::uint32_t v) {
          if (v < kFirstTrack) return v;
          return canon[static_cast<std::size_t>(std::lower_bound(tracks.begin(), tracks.end(), v) - tracks.begin())];
        },
        memo);
    key += '|' + std::to_string(u);
  }
  return key;
}

Automaton Compiler::node(const FormulaPtr& f) {
  ++stats_.nodes;
  if (budget_.max_seconds > 0 && std::chrono::steady_clock::now() > deadline_)
    throw BudgetExceeded("compilation exceeded the time limit", "");
  const std::vector<std::uint32_t> tracks = free_tracks(*f);
  const BddRef u = universe(tracks);
  std::string key;
  if (size_of(*f) <= kCacheableSize) {
    key = cache_key(*f, tracks, u);
    if (auto it = cache_.find(key); it != cache_.end()) {
      ++stats_.cache_hits;
      return rename_tracks(it->second, canonical_tracks(tracks.size()), tracks);
    }
  }
  Automaton a;
  try {
    a = build(f);
    if (restricted_) a = restrict_symbols(a, u);
    a = finish(std::move(a));
  } catch (const BudgetExceeded& e) {
    if (!e.provenance().empty()) throw;
    throw BudgetExceeded(e.what(), abbreviate(mso::to_text(f)));
  }
  a.tracks = tracks;
  if (!key.empty()) cache_.emplace(std::move(key), rename_tracks(a, tracks, canonical_tracks(tracks.size())));
  return a;
}

Automaton Compiler::finish(Automaton a) {
  stats_.peak_states = std::max(stats_.peak_states, a.states());
  if (!a.minimal) a = minimize(a);
  return a;
}

Automaton Compiler::build(const FormulaPtr& f) {
  const Formula& g = *f;
  if (!g.is_quantifier()) {
    const auto elements = free_element_tracks(g);
    if (elements.size() == 1) {
      const std::string* x = nullptr;
      for (const auto& n : free_names(g))
        if (lookup(n).track == elements.front()) x = &n;
      if (is_local(g, *x)) return local(g, *x);
    }
  }
  switch (g.kind()) {
    case Kind::truth: return universal(session_, letters_);
    case Kind::falsity: return empty_language(session_, letters_);
    case Kind::order1:
    case Kind::order2:
    case Kind::word_order:
    case Kind::equal:
    case Kind::cell:
    case Kind::letter:
    case Kind::member: return atom(g);
    case Kind::negation: {
      Automaton a = minimize(complement(node(g.child())));
      for (std::uint32_t t : free_element_tracks(g)) a = finish(product(a, singleton(t), BoolOp::conjunction));
      return a;
    }
    case Kind::conjunction:
    case Kind::disjunction: {
      const bool conj = g.kind() == Kind::conjunction;
      std::vector<Automaton> parts;
      for (const auto& c : g.children()) {
        parts.push_back(node(c));
        if (conj ? is_empty(parts.back()) : is_universal(parts.back())) return parts.back();
      }
      std::stable_sort(parts.begin(), parts.end(),
                       [](const Automaton& a, const Automaton& b) { return a.states() < b.states(); });
      Automaton acc = parts.front();
      for (std::size_t i = 1; i < parts.size(); ++i) {
        acc = finish(product(acc, parts[i], conj ? BoolOp::conjunction : BoolOp::disjunction));
        if (conj ? is_empty(acc) : is_universal(acc)) break;
      }
      return acc;
    }
    case Kind::implication:
      return product(node(g.child(0)), node(g.child(1)), BoolOp::implication);
    case Kind::equivalence:
      return product(node(g.child(0)), node(g.child(1)), BoolOp::equivalence);
    case Kind::exists:
    case Kind::forall: return quantifier_block(f);
  }
  throw std::logic_error("unknown formula kind");
}

Automaton Compiler::atom(const Formula& f) {
  BddManager& bdd = session_->bdd;
  auto element = [&](const std::string& name) {
    const Binding& b = lookup(name);
    if (b.sort != Sort::element) throw SignatureError("set variable '" + name + "' used as an element");
    return b.track;
  };
  switch (f.kind()) {
    case Kind::word_order:
    case Kind::equal: {
      const std::uint32_t tx = element(f.first()), ty = element(f.second());
      if (tx == ty) return f.kind() == Kind::equal ? universal(session_, letters_) : empty_language(session_, letters_);
      std::vector<std::uint32_t> tracks{std::min(tx, ty), std::max(tx, ty)};
      if (f.kind() == Kind::word_order) {
        // 0: nothing seen, 1: x seen, 2: y after x, 3: sink.
        const std::array<std::array<std::uint32_t, 4>, 4> table{{
            {0, 3, 1, 3},
            {1, 2, 3, 3},
            {2, 3, 3, 3},
            {3, 3, 3, 3},
        }};
        return from_transitions(session_, letters_, tracks, 4, {0, 0, 1, 0},
                                [&](std::uint32_t q) { return two_tracks(bdd, tx, ty, table[q]); });
      }
      // 0: nothing seen, 1: both at one position, 2: sink.
      const std::array<std::array<std::uint32_t, 4>, 3> table{{
          {0, 2, 2, 1},
          {1, 2, 2, 2},
          {2, 2, 2, 2},
      }};
      return from_transitions(session_, letters_, tracks, 3, {0, 1, 0},
                              [&](std::uint32_t q) { return two_tracks(bdd, tx, ty, table[q]); });
    }
    case Kind::order1:
    case Kind::order2:
    case Kind::cell:
      throw SignatureError("permutation atoms must be interpreted into the word signature before compiling");
    default: break;
  }
  return local(f, f.first());
}

Automaton Compiler::singleton(std::uint32_t track) {
  BddManager& bdd = session_->bdd;
  return from_transitions(session_, letters_, {track}, 3, {0, 1, 0}, [&](std::uint32_t q) {
    return bdd.node(track, bdd.leaf(q), bdd.leaf(std::min<std::uint32_t>(q + 1, 2)));
  });
}

bool Compiler::is_local(const Formula& f, const std::string& x) const {
  switch (f.kind()) {
    case Kind::truth:
    case Kind::falsity: return true;
    case Kind::letter: return f.first() == x;
    case Kind::member: return f.first() == x && f.second() != x;
    case Kind::equal:
    case Kind::word_order: return f.first() == x && f.second() == x;
    case Kind::order1:
    case Kind::order2:
    case Kind::cell:
    case Kind::exists:
    case Kind::forall: return false;
    default:
      return std::all_of(f.children().begin(), f.children().end(),
                         [&](const FormulaPtr& c) { return is_local(*c, x); });
  }
}

BddRef Compiler::predicate(const Formula& f, const std::string& x) {
  BddManager& bdd = session_->bdd;
  auto combine = [&](BddRef a, BddRef b, auto op) {
    Memo memo;
    return bdd.apply(a, b, op, memo);
  };
  switch (f.kind()) {
    case Kind::truth: return bdd.leaf(1);
    case Kind::falsity: return bdd.leaf(0);
    case Kind::letter: {
      const std::size_t want = f.label();
      return letter_predicate(bdd, letters_, [&](CellIndex c) { return c == want; });
    }
    case Kind::member: return bdd.node(lookup(f.second()).track, bdd.leaf(0), bdd.leaf(1));
    case Kind::equal: return bdd.leaf(1);
    case Kind::word_order: return bdd.leaf(0);
    case Kind::negation: {
      Memo memo;
      return bdd.map_leaves(predicate(*f.child(), x), [](std::uint32_t v) -> std::uint32_t { return 1 - v; }, memo);
    }
    case Kind::conjunction:
    case Kind::disjunction: {
      const bool conj = f.kind() == Kind::conjunction;
      BddRef acc = bdd.leaf(conj ? 1 : 0);
      for (const auto& c : f.children()) acc = combine(acc, predicate(*c, x), conj ? bool_and : bool_or);
      return acc;
    }
    case Kind::implication:
      return combine(predicate(*f.child(0), x), predicate(*f.child(1), x),
                     [](std::uint32_t a, std::uint32_t b) -> std::uint32_t { return (1 - a) | b; });
    case Kind::equivalence:
      return combine(predicate(*f.child(0), x), predicate(*f.child(1), x),
                     [](std::uint32_t a, std::uint32_t b) -> std::uint32_t { return a == b; });
    default: throw std::logic_error("formula is not local");
  }
}

Automaton Compiler::local(const Formula& f, const std::string& x) {
  BddManager& bdd = session_->bdd;
  const std::uint32_t tx = lookup(x).track;
  Memo memo;
  // Positions carrying x must satisfy the predicate; x itself is made a
  // singleton by the enclosing quantifier or by the root.
  const BddRef pred = bdd.apply(bdd.node(tx, bdd.leaf(0), bdd.leaf(1)), predicate(f, x),
                                [](std::uint32_t here, std::uint32_t p) -> std::uint32_t { return here ? p : 1; },
                                memo);
  return position_automaton(session_, letters_, free_tracks(f), pred, true);
}

std::vector<BddRef> Compiler::local_restrictions(const FormulaPtr& body, bool negated) {
  std::vector<BddRef> out;
  BddManager& bdd = session_->bdd;
  auto walk = [&](auto&& self, const Formula& f, bool neg) -> void {
    if (!neg) {
      switch (f.kind()) {
        case Kind::conjunction:
          for (const auto& c : f.children()) self(self, *c, false);
          return;
        case Kind::negation: self(self, *f.child(), true); return;
        case Kind::forall:
          if (f.sort() == Sort::element && is_local(*f.child(), f.variable())) {
            scope_.push_back({f.variable(), 0, Sort::element});
            out.push_back(predicate(*f.child(), f.variable()));
            scope_.pop_back();
          }
          return;
        default: return;
      }
    }
    switch (f.kind()) {
      case Kind::disjunction:
        for (const auto& c : f.children()) self(self, *c, true);
        return;
      case Kind::implication:
        self(self, *f.child(0), false);
        self(self, *f.child(1), true);
        return;
      case Kind::negation: self(self, *f.child(), false); return;
      case Kind::exists:
        if (f.sort() == Sort::element && is_local(*f.child(), f.variable())) {
          scope_.push_back({f.variable(), 0, Sort::element});
          Memo memo;
          out.push_back(bdd.map_leaves(predicate(*f.child(), f.variable()),
                                       [](std::uint32_t v) -> std::uint32_t { return 1 - v; }, memo));
          scope_.pop_back();
        }
        return;
      default: return;
    }
  };
  walk(walk, *body, negated);
  return out;
}

Automaton Compiler::quantifier_block(const FormulaPtr& f) {
  BddManager& bdd = session_->bdd;
  const Kind kind = f->kind();
  const bool universal_block = kind == Kind::forall;
  const std::vector<std::uint32_t> outer_tracks = free_tracks(*f);
  const std::size_t depth = scope_.size();

  FormulaPtr body = f;
  std::vector<std::uint32_t> bound, elements;
  bool binds_set = false;
  while (body->kind() == kind) {
    const auto track = track_at_depth(scope_.size());
    scope_.push_back({body->variable(), track, body->sort()});
    bound.push_back(track);
    if (body->sort() == Sort::element) elements.push_back(track);
    binds_set = binds_set || body->sort() == Sort::set;
    body = body->child();
  }

  struct Restore {
    Compiler& c;
    std::size_t depth;
    BddRef restriction;
    bool restricted;
    ~Restore() {
      c.scope_.resize(depth);
      c.restriction_ = restriction;
      c.restricted_ = restricted;
    }
  } restore{*this, depth, restriction_, restricted_};

  if (bound.size() == 1 && elements.size() == 1 && is_local(*body, scope_.back().name)) {
    const BddRef pred = predicate(*body, scope_.back().name);
    return position_automaton(session_, letters_, outer_tracks, pred, universal_block);
  }

  bool narrowed = false;
  if (binds_set) {
    for (BddRef p : local_restrictions(body, universal_block)) {
      Memo memo;
      const BddRef next = bdd.apply(restriction_, p, bool_and, memo);
      if (next != restriction_) {
        restriction_ = next;
        restricted_ = true;
        narrowed = true;
      }
    }
    if (narrowed) ++stats_.restrictions;
  }

  Automaton a = node(body);
  if (universal_block) a = minimize(complement(a));
  for (std::uint32_t t : elements) a = finish(product(a, singleton(t), BoolOp::conjunction));
  a = finish(project(a, bound));

  restriction_ = restore.restriction;
  restricted_ = restore.restricted;
  scope_.resize(depth);
  if (narrowed) a = finish(extend_symbols(a, universe(outer_tracks)));
  if (universal_block) {
    a = minimize(complement(a));
    for (std::uint32_t t : free_element_tracks(*f)) a = finish(product(a, singleton(t), BoolOp::conjunction));
  }
  return a;
}

Automaton compile(const FormulaPtr& f, std::size_t letters, const Budget& budget) {
  Compiler c(letters, budget);
  return c.compile(f);
}

}  // namespace gridclass::automata
