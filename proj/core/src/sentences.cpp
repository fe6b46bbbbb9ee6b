#include "gridclass/sentences.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "gridclass/errors.hpp"

namespace gridclass::mso {
namespace {

std::string fresh(const std::string& base, const std::set<std::string>& taken) {
  std::string name = base;
  while (taken.count(name)) name += "'";
  return name;
}

std::set<std::string> names_in(const FormulaPtr& f) {
  auto v = all_variable_names(f);
  return {v.begin(), v.end()};
}

// x >_2 y written as y <_2 x, and so on.
FormulaPtr oriented(FormulaPtr (*order)(const std::string&, const std::string&), int sign, const std::string& x,
                    const std::string& y) {
  return sign > 0 ? order(x, y) : order(y, x);
}

}  // namespace

std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

FormulaPtr partition_clause(const std::vector<std::string>& sets) {
  const std::string x = "x";
  std::vector<FormulaPtr> some;
  std::vector<FormulaPtr> exclusive;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    some.push_back(member(x, sets[i]));
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (i != j) exclusive.push_back(implies(member(x, sets[i]), negate(member(x, sets[j]))));
    }
  }
  std::vector<FormulaPtr> parts{disj(std::move(some))};
  parts.insert(parts.end(), exclusive.begin(), exclusive.end());
  return forall(x, conj(std::move(parts)));
}

FormulaPtr mon_prime(const SignedGridMatrix& s, const std::vector<std::string>& sets) {
  if (sets.size() != s.alphabet_size()) throw InputError("mon_prime: need one set variable per cell");
  std::vector<FormulaPtr> clauses{partition_clause(sets)};
  const auto& cells = s.cells();
  for (const Cell& c : cells) {
    const auto& X = sets[c.index];
    clauses.push_back(forall_many({"x", "y"}, implies(conj({member("x", X), member("y", X), lt1("x", "y")}),
                                                 oriented(&lt2, c.entry, "x", "y"))));
  }
  for (const Cell& a : cells) {
    for (const Cell& b : cells) {
      const auto both = [&] { return conj({member("x", sets[a.index]), member("y", sets[b.index])}); };
      if (a.col < b.col) clauses.push_back(forall_many({"x", "y"}, implies(both(), lt1("x", "y"))));
      if (a.row < b.row) clauses.push_back(forall_many({"x", "y"}, implies(both(), lt2("x", "y"))));
    }
  }
  return conj(std::move(clauses));
}

FormulaPtr d_formula(const SignedGridMatrix& s, const std::vector<std::string>& sets, const std::string& x,
                     const std::string& y) {
  std::vector<FormulaPtr> clauses;
  const auto& cells = s.cells();
  for (const Cell& a : cells) {
    for (const Cell& b : cells) {
      if (a.row == b.row) {
        clauses.push_back(conj({member(x, sets[a.index]), member(y, sets[b.index]),
                                oriented(&lt2, s.row_sign(a.row), x, y)}));
      }
    }
  }
  for (const Cell& a : cells) {
    for (const Cell& b : cells) {
      if (a.col == b.col) {
        clauses.push_back(conj({member(x, sets[a.index]), member(y, sets[b.index]),
                                oriented(&lt1, s.col_sign(a.col), x, y)}));
      }
    }
  }
  return disj(std::move(clauses));
}

FormulaPtr acyc(const FormulaPtr& relation, const std::string& x, const std::string& y) {
  auto taken = names_in(relation);
  taken.insert(x);
  taken.insert(y);
  const std::string X = fresh("X", taken);
  taken.insert(X);
  const std::string z = fresh("z", taken);
  taken.insert(z);
  const std::string w = fresh("w", taken);

  FormulaPtr predecessor = exists_unique(y, conj({member(y, X), rename_free(relation, {{x, y}, {y, x}})}));
  FormulaPtr successor = exists_unique(z, conj({member(z, X), rename_free(relation, {{y, z}})}));
  FormulaPtr cycle = conj({exists(w, member(w, X)), forall(x, implies(member(x, X), conj({predecessor, successor})))});
  return negate(exists_set(X, cycle));
}

FormulaPtr geom_sentence(const SignedGridMatrix& s) {
  const auto Y = numbered("Y", s.alphabet_size());
  return exists_sets(Y, conj({mon_prime(s, Y), acyc(d_formula(s, Y, "x", "y"), "x", "y")}));
}

FormulaPtr min_sentence(const SignedGridMatrix& s) {
  const std::size_t n = s.alphabet_size();
  const auto Y = numbered("Y", n);
  // Cells are indexed in lexicographic order, so i precedes j iff i < j.
  std::vector<FormulaPtr> earlier_exceeds;
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<FormulaPtr> below;
    for (std::size_t k = 0; k < l; ++k) below.push_back(cell(k, "y"));
    earlier_exceeds.push_back(conj({member("y", Y[l]), disj(std::move(below))}));
  }
  FormulaPtr witness = exists("y", conj({lt1("y", "x"), disj(earlier_exceeds)}));
  std::vector<FormulaPtr> per_cell;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<FormulaPtr> not_above;
    for (std::size_t i = 0; i <= j; ++i) not_above.push_back(cell(i, "x"));
    per_cell.push_back(forall("x", implies(member("x", Y[j]), disj({disj(std::move(not_above)), witness}))));
  }
  FormulaPtr gridding = conj({mon_prime(s, Y), acyc(d_formula(s, Y, "x", "y"), "x", "y")});
  return forall_sets(Y, implies(gridding, conj(std::move(per_cell))));
}

namespace {

FormulaPtr indecomposable(FormulaPtr (*second)(const std::string&, const std::string&), bool flip) {
  FormulaPtr split = forall("x", conj({disj({member("x", "X"), member("x", "Y")}),
                                       negate(conj({member("x", "X"), member("x", "Y")}))}));
  FormulaPtr placed = forall_many({"x", "y"}, implies(conj({member("x", "X"), member("y", "Y")}),
                                                 conj({lt1("x", "y"), flip ? second("y", "x") : second("x", "y")})));
  FormulaPtr nonempty = conj({exists("x", member("x", "X")), exists("y", member("y", "Y"))});
  return negate(exists_sets({"X", "Y"}, conj({split, nonempty, placed})));
}

}  // namespace

FormulaPtr sum_ind() { return indecomposable(&lt2, false); }
FormulaPtr skew_ind() { return indecomposable(&lt2, true); }

FormulaPtr simple_sentence() {
  const auto convex = [](FormulaPtr (*order)(const std::string&, const std::string&)) {
    return forall_many({"a", "b", "c"},
                  implies(conj({member("a", "X"), member("b", "X"), order("a", "c"), order("c", "b")}),
                          member("c", "X")));
  };
  FormulaPtr big = exists_many({"a", "b"}, conj({member("a", "X"), member("b", "X"), negate(eq("a", "b"))}));
  FormulaPtr proper = exists("c", negate(member("c", "X")));
  return negate(exists_set("X", conj({big, proper, convex(&lt1), convex(&lt2)})));
}

FormulaPtr contains_copy(const Permutation& pattern) {
  const auto p = numbered("p", pattern.size());
  std::vector<FormulaPtr> parts;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      parts.push_back(lt1(p[i], p[j]));
      parts.push_back(pattern[i] < pattern[j] ? lt2(p[i], p[j]) : lt2(p[j], p[i]));
    }
  }
  return exists_many(p, conj(std::move(parts)));
}

FormulaPtr avoids_all(const std::vector<Permutation>& patterns) {
  std::vector<FormulaPtr> parts;
  for (const auto& b : patterns) parts.push_back(negate(contains_copy(b)));
  return conj(std::move(parts));
}

namespace {

FormulaPtr some_copy(const std::vector<Permutation>& basis) {
  std::vector<FormulaPtr> copies;
  for (const auto& b : basis) copies.push_back(contains_copy(b));
  return disj(std::move(copies));
}

}  // namespace

FormulaPtr basis_sentence(const std::vector<Permutation>& basis, const SignedGridMatrix& s) {
  return implies(negate(geom_sentence(s)), some_copy(basis));
}

FormulaPtr subclass_basis_sentence(const std::vector<Permutation>& basis, const SignedGridMatrix& s,
                                   const FormulaPtr& extra) {
  return implies(negate(conj({geom_sentence(s), extra})), some_copy(basis));
}

FormulaPtr simple_basis_sentence(const std::vector<Permutation>& basis, const SignedGridMatrix& s) {
  return implies(conj({negate(geom_sentence(s)), simple_sentence()}), some_copy(basis));
}

FormulaPtr trace_nf_sentence(const SignedGridMatrix& s) {
  const std::size_t n = s.alphabet_size();
  std::vector<FormulaPtr> violations;
  for (CellIndex b = 0; b < n; ++b) {
    std::vector<FormulaPtr> larger_commuting;
    std::vector<FormulaPtr> commuting;
    for (CellIndex a = 0; a < n; ++a) {
      if (!s.independent(a, b)) continue;
      commuting.push_back(letter(a, "k"));
      if (a > b) larger_commuting.push_back(letter(a, "i"));
    }
    if (larger_commuting.empty()) continue;
    // b could move left past every letter of the gap, so the word is not
    // the least of its trace. A single commuting letter would not suffice.
    FormulaPtr gap = forall("k", implies(conj({disj({lt("i", "k"), eq("i", "k")}), lt("k", "j")}),
                                         disj(std::move(commuting))));
    violations.push_back(conj({letter(b, "j"), disj(std::move(larger_commuting)), gap}));
  }
  return negate(exists_many({"i", "j"}, conj({lt("i", "j"), disj(std::move(violations))})));
}

FormulaPtr bij_sentence(const SignedGridMatrix& s, const Budget& budget) {
  return conj({trace_nf_sentence(s), interpret(min_sentence(s), s, budget)});
}

FormulaPtr relativize(const FormulaPtr& f, const std::string& set) {
  if (f->is_atom()) return f;
  if (f->is_quantifier()) {
    FormulaPtr body = relativize(f->child(), set);
    if (f->sort() == Sort::set) {
      if (f->variable() == set) throw InputError("relativize: set variable " + set + " is rebound");
      return Formula::make(f->kind(), f->variable(), {}, 0, Sort::set, {std::move(body)});
    }
    const std::string& x = f->variable();
    if (f->kind() == Kind::exists) return exists(x, conj({member(x, set), std::move(body)}));
    return forall(x, implies(member(x, set), std::move(body)));
  }
  std::vector<FormulaPtr> children;
  for (const auto& c : f->children()) children.push_back(relativize(c, set));
  return Formula::make(f->kind(), {}, {}, 0, f->sort(), std::move(children));
}

FormulaPtr basis_p_sentence(const SignedGridMatrix& s) {
  FormulaPtr geom = geom_sentence(s);
  auto taken = names_in(geom);
  const std::string S = fresh("S", taken);
  taken.insert(S);
  const std::string p = fresh("p", taken);
  taken.insert(p);
  const std::string q = fresh("q", taken);
  FormulaPtr all_but = forall(q, iff(member(q, S), negate(eq(q, p))));
  return conj({negate(geom), forall(p, exists_set(S, conj({all_but, relativize(geom, S)})))});
}

namespace {

class Interpreter {
 public:
  Interpreter(const SignedGridMatrix& s) : s_(s) {
    for (const Cell& c : s.cells()) {
      by_col_[c.col].push_back(c.index);
      by_row_[c.row].push_back(c.index);
    }
  }

  // Node count of one translated order atom along `lines`.
  static std::size_t atom_cost(const std::map<std::size_t, std::vector<CellIndex>>& lines) {
    std::size_t total = 1, after = 0;
    for (const auto& [k, cells] : lines) after += cells.size();
    for (const auto& [k, cells] : lines) {
      after -= cells.size();
      total += 2 * cells.size() + after + 6;
    }
    return total;
  }

  std::size_t cost1() const { return atom_cost(by_col_); }
  std::size_t cost2() const { return atom_cost(by_row_); }

  FormulaPtr run(const FormulaPtr& f) {
    switch (f->kind()) {
      case Kind::order1: return order(f->first(), f->second(), true);
      case Kind::order2: return order(f->first(), f->second(), false);
      case Kind::cell: return letter(f->label(), f->first());
      case Kind::truth:
      case Kind::falsity:
      case Kind::equal:
      case Kind::member: return f;
      case Kind::word_order:
      case Kind::letter: throw SignatureError("interpret: word atom " + to_text(f) + " in a permutation sentence");
      default: break;
    }
    std::vector<FormulaPtr> children;
    children.reserve(f->children().size());
    for (const auto& c : f->children()) children.push_back(run(c));
    return Formula::make(f->kind(), f->first(), {}, 0, f->sort(), std::move(children));
  }

 private:
  FormulaPtr order(const std::string& x, const std::string& y, bool horizontal) {
    auto key = std::make_tuple(x, y, horizontal);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const auto& lines = horizontal ? by_col_ : by_row_;
    std::vector<FormulaPtr> clauses;
    for (auto it = lines.begin(); it != lines.end(); ++it) {
      const int sign = horizontal ? s_.col_sign(it->first) : s_.row_sign(it->first);
      std::vector<FormulaPtr> beyond;
      for (auto later = std::next(it); later != lines.end(); ++later) {
        for (CellIndex j : later->second) beyond.push_back(letter(j, y));
      }
      FormulaPtr same_line = conj({in_line(it->second, y), sign > 0 ? lt(x, y) : lt(y, x)});
      clauses.push_back(conj({in_line(it->second, x), disj({disj(std::move(beyond)), same_line})}));
    }
    FormulaPtr result = disj(std::move(clauses));
    memo_.emplace(key, result);
    return result;
  }

  static FormulaPtr in_line(const std::vector<CellIndex>& cells, const std::string& x) {
    std::vector<FormulaPtr> parts;
    for (CellIndex i : cells) parts.push_back(letter(i, x));
    return disj(std::move(parts));
  }

  const SignedGridMatrix& s_;
  std::map<std::size_t, std::vector<CellIndex>> by_col_;
  std::map<std::size_t, std::vector<CellIndex>> by_row_;
  std::map<std::tuple<std::string, std::string, bool>, FormulaPtr> memo_;
};

void count_orders(const FormulaPtr& f, std::size_t& nodes, std::size_t& first, std::size_t& second) {
  ++nodes;
  if (f->kind() == Kind::order1) ++first;
  if (f->kind() == Kind::order2) ++second;
  for (const auto& c : f->children()) count_orders(c, nodes, first, second);
}

}  // namespace

FormulaPtr interpret(const FormulaPtr& f, const SignedGridMatrix& s, const Budget& budget) {
  Signature::gridded_permutations(s.alphabet_size()).check(f);
  Interpreter interpreter(s);
  std::size_t nodes = 0, first = 0, second = 0;
  count_orders(f, nodes, first, second);
  const double estimate = static_cast<double>(nodes) + static_cast<double>(first) * interpreter.cost1() +
                          static_cast<double>(second) * interpreter.cost2();
  if (estimate > static_cast<double>(budget.max_formula_nodes)) {
    throw BudgetExceeded("translated formula would have about " + std::to_string(static_cast<long long>(estimate)) +
                             " nodes (limit " + std::to_string(budget.max_formula_nodes) + ")",
                         "interpretation over " + std::to_string(s.alphabet_size()) + " cells");
  }
  return interpreter.run(f);
}

}  // namespace gridclass::mso
