#include "gridclass/structure.hpp"

#include <algorithm>
#include <numeric>

#include "gridclass/errors.hpp"

namespace gridclass::mso {

FiniteStructure FiniteStructure::from_permutation(const Permutation& p) {
  FiniteStructure st;
  st.signature = Signature::permutations();
  st.size = p.size();
  st.first.resize(p.size());
  std::iota(st.first.begin(), st.first.end(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) st.second.push_back(p[i] - 1);
  st.label.assign(p.size(), 0);
  return st;
}

FiniteStructure FiniteStructure::from_gridded(const GriddedPermutation& g, std::size_t cells) {
  FiniteStructure st = from_permutation(g.perm);
  st.signature = Signature::gridded_permutations(cells);
  st.label.assign(g.cell_of.begin(), g.cell_of.end());
  return st;
}

FiniteStructure FiniteStructure::from_word(const Word& w, std::size_t letters) {
  FiniteStructure st;
  st.signature = Signature::words(letters);
  st.size = w.size();
  st.first.resize(w.size());
  std::iota(st.first.begin(), st.first.end(), 0);
  st.second = st.first;
  st.label.assign(w.begin(), w.end());
  for (auto l : w) {
    if (l >= letters) throw InputError("letter " + std::to_string(l) + " outside the alphabet");
  }
  return st;
}

namespace {

enum Truth : unsigned char { kFalse = 0, kUnknown = 1, kTrue = 2 };

Truth t_not(Truth v) { return static_cast<Truth>(2 - v); }

struct Node {
  Kind kind = Kind::truth;
  int a = -1;  // element slot (atoms) or bound slot
  int b = -1;  // element slot, or set slot for membership
  std::uint32_t label = 0;
  std::vector<int> kids;
  std::vector<int> block;      // set quantifier block: bound set slots
  std::vector<int> free_sets;  // free set slots (set blocks and quantified conjuncts)
  bool quantified = false;     // contains a quantifier
};

struct Conjunct {
  int node;
  bool positive;
  std::vector<int> leading;  // element slots universally expanded
};

class Checker {
 public:
  Checker(const FiniteStructure& st, const Budget& budget) : st_(st), budget_(budget) {
    if (st.size > budget.max_model_size || st.size > 32) {
      throw BudgetExceeded("structure of size " + std::to_string(st.size) + " exceeds the model checker limit of " +
                               std::to_string(std::min<std::size_t>(budget.max_model_size, 32)),
                           "model checking");
    }
    full_ = st.size == 32 ? ~0u : ((1u << st.size) - 1u);
  }

  Truth run(const FormulaPtr& f, const Environment& env) {
    st_.signature.check(f);
    for (const auto& [name, value] : env) {
      if (std::holds_alternative<std::size_t>(value)) {
        std::size_t e = std::get<std::size_t>(value);
        if (e >= st_.size) throw InputError("element " + std::to_string(e) + " outside the structure");
        scopes_elem_.push_back({name, new_elem_slot()});
        elem_[scopes_elem_.back().second] = static_cast<int>(e);
      } else {
        std::uint32_t mask = 0;
        for (std::size_t e : std::get<std::vector<std::size_t>>(value)) {
          if (e >= st_.size) throw InputError("element " + std::to_string(e) + " outside the structure");
          mask |= 1u << e;
        }
        int slot = new_set_slot();
        scopes_set_.push_back({name, slot});
        val_[slot] = mask;
        known_[slot] = full_;
      }
    }
    int root = build(f, 0);
    return eval(root);
  }

 private:
  int new_elem_slot() {
    elem_.push_back(-1);
    return static_cast<int>(elem_.size()) - 1;
  }
  int new_set_slot() {
    val_.push_back(0);
    known_.push_back(0);
    return static_cast<int>(val_.size()) - 1;
  }

  static int lookup(const std::vector<std::pair<std::string, int>>& scopes, const std::string& name) {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    return -1;
  }
  int elem_slot(const std::string& name) const {
    int s = lookup(scopes_elem_, name);
    if (s < 0) {
      throw SignatureError(lookup(scopes_set_, name) >= 0 ? "set variable " + name + " used as an element"
                                                          : "unbound element variable " + name);
    }
    return s;
  }
  int set_slot(const std::string& name) const {
    int s = lookup(scopes_set_, name);
    if (s < 0) {
      throw SignatureError(lookup(scopes_elem_, name) >= 0 ? "element variable " + name + " used as a set"
                                                           : "unbound set variable " + name);
    }
    return s;
  }

  int add(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  static void merge_into(std::vector<int>& into, const std::vector<int>& from) {
    for (int s : from) {
      if (std::find(into.begin(), into.end(), s) == into.end()) into.push_back(s);
    }
  }

  int build(const FormulaPtr& f, std::size_t set_depth) {
    Node n;
    n.kind = f->kind();
    n.label = static_cast<std::uint32_t>(f->label());
    switch (f->kind()) {
      case Kind::truth:
      case Kind::falsity: return add(std::move(n));
      case Kind::order1:
      case Kind::order2:
      case Kind::word_order:
      case Kind::equal:
        n.a = elem_slot(f->first());
        n.b = elem_slot(f->second());
        return add(std::move(n));
      case Kind::cell:
      case Kind::letter:
        n.a = elem_slot(f->first());
        return add(std::move(n));
      case Kind::member:
        n.a = elem_slot(f->first());
        n.b = set_slot(f->second());
        n.free_sets.push_back(n.b);
        return add(std::move(n));
      case Kind::exists:
      case Kind::forall: {
        if (f->sort() == Sort::element) {
          n.a = new_elem_slot();
          scopes_elem_.push_back({f->variable(), n.a});
          int body = build(f->child(), set_depth);
          scopes_elem_.pop_back();
          n.kids = {body};
          n.free_sets = nodes_[body].free_sets;
          n.quantified = true;
          return add(std::move(n));
        }
        // Gather a block of like set quantifiers.
        FormulaPtr g = f;
        std::size_t pushed = 0;
        while (g->is_quantifier() && g->sort() == Sort::set && g->kind() == f->kind()) {
          int slot = new_set_slot();
          scopes_set_.push_back({g->variable(), slot});
          n.block.push_back(slot);
          ++pushed;
          g = g->child();
        }
        if (set_depth + pushed > budget_.max_set_depth) {
          throw BudgetExceeded("more than " + std::to_string(budget_.max_set_depth) + " nested set variables",
                               "model checking");
        }
        int body = build(g, set_depth + pushed);
        scopes_set_.resize(scopes_set_.size() - pushed);
        n.kids = {body};
        for (int s : nodes_[body].free_sets) {
          if (std::find(n.block.begin(), n.block.end(), s) == n.block.end()) n.free_sets.push_back(s);
        }
        n.quantified = true;
        int id = add(std::move(n));
        conjuncts_.resize(nodes_.size());
        collect(body, f->kind() == Kind::exists, conjuncts_[id]);
        return id;
      }
      default: {
        for (const auto& c : f->children()) {
          int k = build(c, set_depth);
          merge_into(n.free_sets, nodes_[k].free_sets);
          n.quantified = n.quantified || nodes_[k].quantified;
          n.kids.push_back(k);
        }
        return add(std::move(n));
      }
    }
  }

  // Splits a block body into conjuncts (with polarity) and strips leading
  // universal element quantifiers so each instance can be tracked alone.
  void collect(int id, bool positive, std::vector<Conjunct>& out) {
    const Node& n = nodes_[id];
    if (positive && n.kind == Kind::conjunction) {
      for (int k : n.kids) collect(k, true, out);
      return;
    }
    if (!positive && n.kind == Kind::disjunction) {
      for (int k : n.kids) collect(k, false, out);
      return;
    }
    if (!positive && n.kind == Kind::implication) {
      collect(n.kids[0], true, out);
      collect(n.kids[1], false, out);
      return;
    }
    if (n.kind == Kind::negation) {
      collect(n.kids[0], !positive, out);
      return;
    }
    Conjunct c{id, positive, {}};
    while (true) {
      const Node& m = nodes_[c.node];
      const bool universal = (c.positive && m.kind == Kind::forall) || (!c.positive && m.kind == Kind::exists);
      if (!universal || !m.block.empty()) break;
      c.leading.push_back(m.a);
      c.node = m.kids[0];
    }
    out.push_back(std::move(c));
  }

  Truth member(int elem_slot, int set_slot) const {
    const std::uint32_t bit = 1u << elem_[elem_slot];
    if (!(known_[set_slot] & bit)) return kUnknown;
    return (val_[set_slot] & bit) ? kTrue : kFalse;
  }

  Truth eval(int id) {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case Kind::truth: return kTrue;
      case Kind::falsity: return kFalse;
      case Kind::order1:
      case Kind::word_order: return st_.first[elem_[n.a]] < st_.first[elem_[n.b]] ? kTrue : kFalse;
      case Kind::order2: return st_.second[elem_[n.a]] < st_.second[elem_[n.b]] ? kTrue : kFalse;
      case Kind::equal: return elem_[n.a] == elem_[n.b] ? kTrue : kFalse;
      case Kind::cell:
      case Kind::letter: return st_.label[elem_[n.a]] == n.label ? kTrue : kFalse;
      case Kind::member: return member(n.a, n.b);
      case Kind::negation: return t_not(eval(n.kids[0]));
      case Kind::conjunction: {
        Truth r = kTrue;
        for (int k : n.kids) {
          r = std::min(r, eval(k));
          if (r == kFalse) break;
        }
        return r;
      }
      case Kind::disjunction: {
        Truth r = kFalse;
        for (int k : n.kids) {
          r = std::max(r, eval(k));
          if (r == kTrue) break;
        }
        return r;
      }
      case Kind::implication: {
        Truth a = eval(n.kids[0]);
        if (a == kFalse) return kTrue;
        return std::max(t_not(a), eval(n.kids[1]));
      }
      case Kind::equivalence: {
        Truth a = eval(n.kids[0]);
        if (a == kUnknown) return kUnknown;
        Truth b = eval(n.kids[1]);
        if (b == kUnknown) return kUnknown;
        return a == b ? kTrue : kFalse;
      }
      case Kind::exists:
      case Kind::forall: {
        if (!n.block.empty()) return eval_block(id);
        const bool ex = n.kind == Kind::exists;
        Truth r = ex ? kFalse : kTrue;
        for (std::size_t e = 0; e < st_.size; ++e) {
          elem_[n.a] = static_cast<int>(e);
          Truth v = eval(n.kids[0]);
          r = ex ? std::max(r, v) : std::min(r, v);
          if (r == (ex ? kTrue : kFalse)) break;
        }
        return r;
      }
    }
    return kUnknown;
  }

  struct Instance {
    int node;
    bool positive;
    std::vector<std::pair<int, int>> bindings;
    Truth value = kUnknown;
  };

  struct Search {
    std::vector<int> block;
    std::vector<Instance> instances;
    std::vector<std::vector<int>> by_bit;    // (element * k + var) -> instances
    std::vector<std::vector<int>> by_var;    // var -> quantified instances
    std::size_t open = 0;                    // instances not yet true
  };

  Truth eval_instance(Instance& in) {
    for (const auto& [slot, e] : in.bindings) elem_[slot] = e;
    Truth v = eval(in.node);
    return in.positive ? v : t_not(v);
  }

  void member_atoms(int id, std::vector<int>& out) const {
    const Node& n = nodes_[id];
    if (n.kind == Kind::member) out.push_back(id);
    for (int k : n.kids) member_atoms(k, out);
  }

  static bool next_tuple(std::vector<int>& tuple, int size) {
    for (auto& t : tuple) {
      if (++t < size) return true;
      t = 0;
    }
    return false;
  }

  // Exists-search over the block's bits (element-major) for an assignment
  // making every conjunct true; `forall` blocks search for a counterexample.
  Truth eval_block(int id) {
    const Node& n = nodes_[id];
    for (int s : n.free_sets) {
      if (known_[s] != full_) return kUnknown;
    }
    const bool ex = n.kind == Kind::exists;
    Search search;
    search.block = n.block;
    const std::size_t k = n.block.size();
    const std::size_t size = st_.size;
    search.by_bit.resize(size * k);
    search.by_var.resize(k);
    std::vector<std::uint32_t> saved_val, saved_known;
    for (int s : n.block) {
      saved_val.push_back(val_[s]);
      saved_known.push_back(known_[s]);
      val_[s] = 0;
      known_[s] = 0;
    }
    auto var_of = [&](int slot) -> int {
      auto it = std::find(n.block.begin(), n.block.end(), slot);
      return it == n.block.end() ? -1 : static_cast<int>(it - n.block.begin());
    };
    for (const Conjunct& c : conjuncts_[id]) {
      const bool positive = c.positive;
      std::vector<int> atoms;
      const bool quantified = nodes_[c.node].quantified;
      if (!quantified) member_atoms(c.node, atoms);
      if (size == 0 && !c.leading.empty()) continue;  // vacuous over the empty domain
      std::vector<int> tuple(c.leading.size(), 0);
      do {
        Instance in{c.node, positive, {}, kUnknown};
        for (std::size_t i = 0; i < tuple.size(); ++i) in.bindings.push_back({c.leading[i], tuple[i]});
        const int index = static_cast<int>(search.instances.size());
        search.instances.push_back(std::move(in));
        if (quantified) {
          for (int s : nodes_[c.node].free_sets) {
            int v = var_of(s);
            if (v >= 0) search.by_var[v].push_back(index);
          }
        } else {
          for (const auto& [slot, e] : search.instances.back().bindings) elem_[slot] = e;
          for (int a : atoms) {
            int v = var_of(nodes_[a].b);
            if (v < 0) continue;
            auto& list = search.by_bit[static_cast<std::size_t>(elem_[nodes_[a].a]) * k + v];
            if (list.empty() || list.back() != index) list.push_back(index);
          }
        }
      } while (next_tuple(tuple, static_cast<int>(size)));
    }
    Truth result = kFalse;
    bool dead = false;
    for (auto& in : search.instances) {
      in.value = eval_instance(in);
      if (in.value == kFalse) dead = true;
      if (in.value != kTrue) ++search.open;
    }
    if (!dead) result = search.open == 0 ? kTrue : assign(search, 0);
    for (std::size_t i = 0; i < k; ++i) {
      val_[n.block[i]] = saved_val[i];
      known_[n.block[i]] = saved_known[i];
    }
    return ex ? result : t_not(result);
  }

  Truth assign(Search& search, std::size_t t) {
    const std::size_t k = search.block.size();
    if (t == st_.size * k) return search.open == 0 ? kTrue : kUnknown;
    const std::size_t e = t / k;
    const std::size_t v = t % k;
    const int slot = search.block[v];
    const std::uint32_t bit = 1u << e;
    known_[slot] |= bit;
    Truth best = kFalse;
    std::vector<std::pair<int, Truth>> changed;
    for (int value = 1; value >= 0; --value) {
      if (value) val_[slot] |= bit; else val_[slot] &= ~bit;
      changed.clear();
      bool dead = false;
      auto refresh = [&](int index) {
        Instance& in = search.instances[index];
        if (in.value != kUnknown || dead) return;
        Truth now = eval_instance(in);
        if (now == kUnknown) return;
        changed.push_back({index, in.value});
        in.value = now;
        if (now == kFalse) dead = true;
        else --search.open;
      };
      for (int index : search.by_bit[t]) refresh(index);
      for (int index : search.by_var[v]) refresh(index);
      Truth r = kFalse;
      if (!dead) r = search.open == 0 ? kTrue : assign(search, t + 1);
      for (auto it = changed.rbegin(); it != changed.rend(); ++it) {
        Instance& in = search.instances[it->first];
        if (in.value == kTrue) ++search.open;
        in.value = it->second;
      }
      best = std::max(best, r);
      if (best == kTrue) break;
    }
    known_[slot] &= ~bit;
    val_[slot] &= ~bit;
    return best;
  }

  const FiniteStructure& st_;
  Budget budget_;
  std::uint32_t full_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::vector<Conjunct>> conjuncts_;
  std::vector<int> elem_;
  std::vector<std::uint32_t> val_;
  std::vector<std::uint32_t> known_;
  std::vector<std::pair<std::string, int>> scopes_elem_;
  std::vector<std::pair<std::string, int>> scopes_set_;
};

}  // namespace

bool model_check(const FiniteStructure& st, const FormulaPtr& f, const Environment& env, const Budget& budget) {
  Checker checker(st, budget);
  Truth t = checker.run(f, env);
  if (t == kUnknown) throw Error("model_check: indeterminate result (internal error)");
  return t == kTrue;
}

bool model_check(const Permutation& p, const FormulaPtr& f, const Budget& budget) {
  return model_check(FiniteStructure::from_permutation(p), f, {}, budget);
}

}  // namespace gridclass::mso
