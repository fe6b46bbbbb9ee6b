#include "gridclass/analysis.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <unordered_set>

#include "gridclass/compile.hpp"
#include "gridclass/sentences.hpp"
#include "gridclass/structure.hpp"

namespace gridclass::analysis {

namespace {

using PermSet = std::unordered_set<Permutation, PermutationHash>;

class GriddingSearch {
 public:
  GriddingSearch(const Permutation& p, const SignedGridMatrix& s) : p_(p), s_(s), cells_(p.size()) {}

  bool run() { return place(0); }
  GriddedPermutation witness() const { return {p_, cells_}; }

 private:
  bool compatible(std::size_t i, CellIndex c) const {
    const Cell& ci = s_.cell(c);
    for (std::size_t j = 0; j < i; ++j) {
      const Cell& cj = s_.cell(cells_[j]);
      const bool lower = p_[j] < p_[i];
      if (cj.col != ci.col && cj.col > ci.col) return false;
      if (cj.row != ci.row && (cj.row < ci.row) != lower) return false;
      if (cj.index == ci.index && (ci.entry > 0) != lower) return false;
    }
    return true;
  }

  bool place(std::size_t i) {
    if (i == p_.size()) return is_valid_gridding(s_, witness());
    for (CellIndex c = 0; c < s_.alphabet_size(); ++c) {
      if (!compatible(i, c)) continue;
      cells_[i] = c;
      if (place(i + 1)) return true;
    }
    return false;
  }

  const Permutation& p_;
  const SignedGridMatrix& s_;
  std::vector<CellIndex> cells_;
};

void sort_perms(std::vector<Permutation>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string list_text(const std::vector<Permutation>& v) {
  std::string out;
  for (const auto& p : v) out += (out.empty() ? "" : ", ") + p.to_compact_string();
  return "{" + out + "}";
}

// Words of an extension matrix and a compiler over them, shared by the
// certification rounds of one computation.
struct Decider {
  SignedGridMatrix matrix;
  bool validated_only = false;
  Budget budget;
  std::unique_ptr<automata::Compiler> compiler;

  Decider(SignedGridMatrix m, bool validated, const Budget& b) : matrix(std::move(m)), validated_only(validated), budget(b) {
    if (matrix.alphabet_size() > budget.max_letters)
      throw BudgetExceeded("extension matrix has " + std::to_string(matrix.alphabet_size()) + " cells", "");
  }

  Certificate decide(const mso::FormulaPtr& sentence, const std::string& description) {
    mso::FormulaPtr words = mso::interpret(sentence, matrix, budget);
    if (!compiler) compiler = std::make_unique<automata::Compiler>(matrix.alphabet_size(), budget);
    automata::Automaton a = compiler->compile(words);
    Certificate c;
    c.sentence = description;
    c.extension = matrix.base().to_inline_string();
    c.letters = matrix.alphabet_size();
    c.states = a.states();
    c.universal = automata::is_universal(a);
    c.extension_validated_only = validated_only;
    return c;
  }
};

std::unique_ptr<Decider> make_decider(const SignedGridMatrix& s, const std::optional<GridMatrix>& override_matrix,
                                      std::size_t sanity_length, const Budget& budget) {
  if (override_matrix) {
    const ExtensionCheck check = check_extension_matrix(s, *override_matrix, sanity_length);
    if (!check.passed)
      throw InputError("extension matrix does not contain the one-point extension " +
                       check.counterexample->to_string() + " of a member");
    return std::make_unique<Decider>(refine_to_pmm(*override_matrix), true, budget);
  }
  const ExtensionMatrix n = one_point_extension_matrix(s);
  return std::make_unique<Decider>(refine_to_pmm(n.matrix), false, budget);
}

// The scan shared by the basis computations: candidates of length n are the
// one-point extensions of the class members of length n - 1.
struct Scan {
  std::function<bool(const Permutation&)> in_class;
  std::vector<Permutation> members{Permutation{}};
  std::vector<Permutation> basis;

  bool next_length() {
    std::set<Permutation> candidates;
    for (const auto& m : members)
      for (auto& e : one_point_extensions(m)) candidates.insert(std::move(e));
    const PermSet previous(members.begin(), members.end());
    std::vector<Permutation> next;
    bool added = false;
    for (const auto& c : candidates) {
      if (in_class(c)) {
        next.push_back(c);
        continue;
      }
      const auto deletions = all_deletions(c);
      if (std::all_of(deletions.begin(), deletions.end(), [&](const Permutation& d) { return previous.count(d) > 0; })) {
        basis.push_back(c);
        added = true;
      }
    }
    members = std::move(next);
    return added;
  }
};

template <class MakeSentence>
BasisResult basis_loop(Scan& scan, std::optional<std::size_t> max_length, std::size_t certify_limit,
                       const std::function<std::unique_ptr<Decider>()>& make, MakeSentence sentence,
                       const std::string& label) {
  BasisResult r;
  std::unique_ptr<Decider> decider;
  bool pending = true;  // candidate set not yet decided
  const std::size_t limit = max_length ? *max_length : certify_limit;
  for (std::size_t n = 1; n <= limit; ++n) {
    if (scan.next_length()) pending = true;
    r.length = n;
    r.elements = scan.basis;
    if (max_length || !pending) continue;
    try {
      if (!decider) decider = make();
      Certificate c = decider->decide(sentence(scan.basis), label + " " + list_text(scan.basis));
      pending = false;
      if (c.universal) {
        r.mode = BasisMode::certified_complete;
        r.certificate = std::move(c);
        return r;
      }
      r.certificate = std::move(c);
    } catch (const BudgetExceeded& e) {
      r.budget_exhausted = true;
      r.diagnostic = e.what();
      return r;
    }
  }
  r.mode = BasisMode::bounded;
  if (!max_length) r.diagnostic = "not certified by length " + std::to_string(limit);
  return r;
}

bool sum_decomposable(const Permutation& p) {
  int high = 0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    high = std::max(high, p[k]);
    if (high == static_cast<int>(k) + 1) return true;
  }
  return false;
}

bool skew_decomposable(const Permutation& p) {
  const int n = static_cast<int>(p.size());
  int low = n + 1;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    low = std::min(low, p[k]);
    if (low == n - static_cast<int>(k)) return true;
  }
  return false;
}

GridMatrix inline_matrix(const char* text) { return parse_matrix_inline(text); }

}  // namespace

MembershipResult membership(const Permutation& p, const SignedGridMatrix& s) {
  GriddingSearch search(p, s);
  MembershipResult r;
  r.member = search.run();
  if (r.member) r.witness = search.witness();
  return r;
}

bool is_member(const Permutation& p, const SignedGridMatrix& s) { return membership(p, s).member; }

ExtensionCheck check_extension_matrix(const SignedGridMatrix& s, const GridMatrix& n, std::size_t length) {
  const SignedGridMatrix target = refine_to_pmm(n);
  ExtensionCheck r;
  r.length = length;
  std::vector<Permutation> members{Permutation{}};
  PermSet checked;
  for (std::size_t k = 0; k <= length; ++k) {
    std::set<Permutation> next;
    for (const auto& m : members)
      for (auto& e : one_point_extensions(m)) {
        if (checked.insert(e).second && !is_member(e, target)) {
          r.passed = false;
          r.counterexample = e;
          return r;
        }
        if (k < length && is_member(e, s)) next.insert(std::move(e));
      }
    members.assign(next.begin(), next.end());
  }
  return r;
}

GridMatrix small_extension_matrix_for_increasing() { return inline_matrix("1 0 1 / 0 1 0 / 1 0 1"); }

BasisResult compute_basis(const SignedGridMatrix& s, const BasisOptions& opts) {
  Scan scan;
  scan.in_class = [&](const Permutation& p) { return is_member(p, s); };
  return basis_loop(
      scan, opts.max_length, opts.certify_limit,
      [&] { return make_decider(s, opts.extension_matrix, opts.sanity_length, opts.budget); },
      [&](const std::vector<Permutation>& b) { return mso::basis_sentence(b, s); }, "not Geom implies one of");
}

BoundResult basis_length_bound(const SignedGridMatrix& s, const BoundOptions& opts) {
  auto decider = make_decider(s, opts.extension_matrix, opts.sanity_length, opts.budget);
  mso::FormulaPtr words = mso::interpret(mso::basis_p_sentence(s), decider->matrix, opts.budget);
  automata::Compiler compiler(decider->matrix.alphabet_size(), opts.budget);
  const automata::Automaton a = compiler.compile(words);
  BoundResult r;
  r.language = automata::finite_language_max_length(a);
  r.states = a.states();
  using Kind = automata::LanguageLength::Kind;
  if (r.language.kind == Kind::finite)
    r.bound = r.language.max_length;
  else if (r.language.kind == Kind::infinite)
    r.bound = r.states - 1;
  return r;
}

SubclassSpec SubclassSpec::sentence(mso::FormulaPtr f) {
  SubclassSpec s;
  s.what_ = std::move(f);
  return s;
}

SubclassSpec SubclassSpec::avoiding(std::vector<Permutation> patterns) {
  SubclassSpec s;
  sort_perms(patterns);
  s.what_ = std::move(patterns);
  return s;
}

SubclassSpec SubclassSpec::builtin(Builtin b) {
  SubclassSpec s;
  s.what_ = b;
  return s;
}

mso::FormulaPtr SubclassSpec::formula() const {
  if (auto f = std::get_if<mso::FormulaPtr>(&what_)) return *f;
  if (auto v = std::get_if<std::vector<Permutation>>(&what_)) return mso::avoids_all(*v);
  switch (std::get<Builtin>(what_)) {
    case Builtin::simple: return mso::simple_sentence();
    case Builtin::sum_indecomposable: return mso::sum_ind();
    case Builtin::skew_indecomposable: return mso::skew_ind();
  }
  return mso::top();
}

bool SubclassSpec::holds(const Permutation& p, const Budget& budget) const {
  if (auto f = std::get_if<mso::FormulaPtr>(&what_)) return mso::model_check(p, *f, budget);
  if (auto v = std::get_if<std::vector<Permutation>>(&what_))
    return std::none_of(v->begin(), v->end(), [&](const Permutation& b) { return contains_pattern(p, b); });
  switch (std::get<Builtin>(what_)) {
    case Builtin::simple: return is_simple(p);
    case Builtin::sum_indecomposable: return !sum_decomposable(p);
    case Builtin::skew_indecomposable: return !skew_decomposable(p);
  }
  return true;
}

std::string SubclassSpec::describe() const {
  if (auto f = std::get_if<mso::FormulaPtr>(&what_)) return mso::to_text(*f);
  if (auto v = std::get_if<std::vector<Permutation>>(&what_)) {
    std::string out;
    for (const auto& p : *v) out += (out.empty() ? "" : ", ") + p.to_compact_string();
    return "Av(" + out + ")";
  }
  switch (std::get<Builtin>(what_)) {
    case Builtin::simple: return "simple";
    case Builtin::sum_indecomposable: return "sum-indecomposable";
    case Builtin::skew_indecomposable: return "skew-indecomposable";
  }
  return "";
}

std::optional<std::pair<Permutation, Permutation>> downward_closure_violation(const SignedGridMatrix& s,
                                                                            const SubclassSpec& spec,
                                                                            const ClosureCheck& check,
                                                                            const Budget& budget) {
  auto violation = [&](const Permutation& p) -> std::optional<std::pair<Permutation, Permutation>> {
    if (!spec.holds(p, budget)) return std::nullopt;
    for (const auto& d : all_deletions(p))
      if (!spec.holds(d, budget)) return std::make_pair(p, d);
    return std::nullopt;
  };
  std::vector<Permutation> members{Permutation{}};
  for (std::size_t n = 1; n <= check.length; ++n) {
    std::set<Permutation> next;
    for (const auto& m : members)
      for (auto& e : one_point_extensions(m))
        if (is_member(e, s)) next.insert(std::move(e));
    members.assign(next.begin(), next.end());
    for (const auto& p : members)
      if (auto v = violation(p)) return v;
  }
  if (s.alphabet_size() == 0) return std::nullopt;
  std::mt19937_64 rng(check.seed);
  std::uniform_int_distribution<CellIndex> letter(0, static_cast<CellIndex>(s.alphabet_size() - 1));
  for (std::size_t i = 0; i < check.samples; ++i) {
    Word w(check.length + 1 + i % 2);
    for (auto& x : w) x = letter(rng);
    if (auto v = violation(apply_word(s, w))) return v;
  }
  return std::nullopt;
}

automata::Automaton counting_automaton(const SignedGridMatrix& s, const std::optional<SubclassSpec>& spec,
                                       bool gridded, const Budget& budget) {
  mso::FormulaPtr f = gridded ? mso::trace_nf_sentence(s) : mso::bij_sentence(s, budget);
  if (spec) f = mso::conj({f, mso::interpret(spec->formula(), s, budget)});
  automata::Compiler compiler(s.alphabet_size(), budget);
  return compiler.compile(f);
}

GFResult generating_function(const SignedGridMatrix& s, const std::optional<SubclassSpec>& spec,
                             const GFOptions& opts) {
  const automata::Automaton a = counting_automaton(s, spec, opts.gridded, opts.budget);
  GFResult r;
  r.gf = transfer_matrix_gf(a, opts.include_empty);
  r.states = a.states();
  r.series = r.gf.series(13);
  if (!opts.include_empty) r.series.erase(r.series.begin());
  else r.series.pop_back();
  return r;
}

BasisResult subclass_basis(const SignedGridMatrix& s, const SubclassSpec& spec, const SubclassOptions& opts) {
  if (auto bad = downward_closure_violation(s, spec, opts.closure, opts.budget))
    throw SpecRefused("subclass " + spec.describe() + " is not closed under patterns: " +
                      bad->first.to_compact_string() + " is in it but " +
                      (bad->second.empty() ? std::string("the empty permutation") : bad->second.to_compact_string()) +
                      " is not");
  Scan scan;
  scan.in_class = [&](const Permutation& p) { return is_member(p, s) && spec.holds(p, opts.budget); };
  const mso::FormulaPtr extra = spec.formula();
  return basis_loop(
      scan, opts.max_length, opts.certify_limit,
      [&] { return make_decider(s, opts.extension_matrix, opts.sanity_length, opts.budget); },
      [&](const std::vector<Permutation>& b) { return mso::subclass_basis_sentence(b, s, extra); },
      "not (Geom and " + spec.describe() + ") implies one of");
}

GridMatrix default_alternation_matrix() {
  return block_diagonal({inline_matrix("1 1"), inline_matrix("1 / 1"), inline_matrix("-1 -1"), inline_matrix("-1 / -1")});
}

BasisResult substitution_closure_basis(const SignedGridMatrix& s, const ClosureOptions& opts) {
  BasisResult r;
  r.caveat = !opts.alternation_matrix.has_value();
  std::unique_ptr<Decider> decider;
  std::vector<Permutation> basis;
  std::set<Permutation> simple_non_members;
  bool pending = true;
  const std::size_t limit = opts.max_length ? *opts.max_length : opts.certify_limit;
  for (std::size_t n = 1; n <= limit; ++n) {
    for (const auto& p : all_permutations(n)) {
      if (!is_simple(p) || is_member(p, s)) continue;
      bool minimal = true;
      for (std::uint32_t mask = 1; minimal && mask + 1 < (1u << n); ++mask) {
        std::vector<int> picked;
        for (std::size_t i = 0; i < n; ++i)
          if (mask >> i & 1u) picked.push_back(p[i]);
        minimal = simple_non_members.count(Permutation::standardize(picked)) == 0;
      }
      simple_non_members.insert(p);
      if (minimal) {
        basis.push_back(p);
        pending = true;
      }
    }
    r.length = n;
    r.elements = basis;
    if (opts.max_length || !pending) continue;
    try {
      if (!decider) {
        auto base = make_decider(s, opts.extension_matrix, opts.sanity_length, opts.budget);
        const GridMatrix alternation = opts.alternation_matrix.value_or(default_alternation_matrix());
        decider = std::make_unique<Decider>(refine_to_pmm(block_diagonal({base->matrix.base(), alternation})),
                                            base->validated_only, opts.budget);
      }
      Certificate c = decider->decide(mso::simple_basis_sentence(basis, s),
                                      "(not Geom and simple) implies one of " + list_text(basis));
      pending = false;
      const bool done = c.universal;
      r.certificate = std::move(c);
      if (done) {
        r.mode = BasisMode::certified_complete;
        return r;
      }
    } catch (const BudgetExceeded& e) {
      r.budget_exhausted = true;
      r.diagnostic = e.what();
      return r;
    }
  }
  r.mode = BasisMode::bounded;
  if (!opts.max_length) r.diagnostic = "not certified by length " + std::to_string(limit);
  return r;
}

}  // namespace gridclass::analysis
