// Runs the ten acceptance checks and prints one PASS/FAIL line for each.
// Exit status is the number of failed checks. Criterion numbers given as
// arguments restrict the run to those checks.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gridclass/analysis.hpp"
#include "gridclass/compile.hpp"
#include "gridclass/errors.hpp"
#include "gridclass/oracle.hpp"
#include "gridclass/sentences.hpp"
#include "gridclass/structure.hpp"
#include "random_formula.hpp"
#include "suite.hpp"

using namespace gridclass;
using fixtures::perms;
using fixtures::signed_matrix;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  // Records a failed expectation; returns `ok`.
  bool expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
    return ok;
  }
  void note(const std::string& what) { detail << (detail.tellp() > 0 ? "; " : "") << what; }
};

std::string list(const std::vector<Permutation>& ps) {
  std::string out;
  for (const auto& p : ps) out += (out.empty() ? "" : ",") + p.to_compact_string();
  return "{" + out + "}";
}

std::string list(const std::vector<automata::BigInt>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : " ") + x.str();
  return out;
}

// 1. Membership search, exhaustive images and the defining sentence agree.
void membership_agreement(Verdict& v) {
  for (const auto& text : fixtures::suite()) {
    const auto s = signed_matrix(text);
    const auto geom = mso::geom_sentence(s);
    std::size_t disagreements = 0;
    for (std::size_t n = 0; n <= 7; ++n) {
      const auto members = oracle::brute_members(s, n);
      for (const auto& p : all_permutations(n)) {
        const bool by_search = analysis::is_member(p, s);
        const bool by_oracle = members.contains(p);
        const bool by_sentence = mso::model_check(p, geom);
        if (by_search != by_oracle || by_search != by_sentence) {
          if (disagreements++ == 0)
            v.expect(false, "[" + text + "] " + p.to_string() + ": search " + std::to_string(by_search) +
                                " oracle " + std::to_string(by_oracle) + " sentence " + std::to_string(by_sentence));
        }
      }
    }
    v.expect(disagreements == 0, "[" + text + "] " + std::to_string(disagreements) + " disagreements");
  }
  v.note("8 matrices, all permutations of length <= 7");
}

// 2. The word map preserves length and pattern order (the image of a
// subword is a pattern of the image), its gridded images are valid,
// commuting letters can be swapped, and every member is an image.
void word_map_properties(Verdict& v) {
  std::mt19937_64 rng(2024);
  for (const auto& text : fixtures::suite()) {
    const auto s = signed_matrix(text);
    const std::size_t k = s.alphabet_size();
    for (int sample = 0; sample < 1000; ++sample) {
      Word w(rng() % 8);
      for (auto& letter : w) letter = static_cast<CellIndex>(rng() % k);
      Word sub;
      for (auto letter : w)
        if (rng() % 2) sub.push_back(letter);
      const auto g = apply_word_gridded(s, w);
      auto cells = g.cell_of, letters = w;
      std::sort(cells.begin(), cells.end());
      std::sort(letters.begin(), letters.end());
      bool ok = g.perm.size() == w.size() && contains_pattern(g.perm, apply_word(s, sub)) && cells == letters &&
                is_valid_gridding(s, g) && analysis::is_member(g.perm, s) && g == oracle::place(s, w);
      for (std::size_t i = 0; ok && i + 1 < w.size(); ++i) {
        if (!s.independent(w[i], w[i + 1])) continue;
        Word swapped = w;
        std::swap(swapped[i], swapped[i + 1]);
        ok = apply_word(s, swapped) == g.perm;
      }
      if (!v.expect(ok, "[" + text + "] sample " + std::to_string(sample) + " violates a word-map property")) break;
    }
    for (std::size_t n = 0; n <= 6; ++n) {
      std::set<Permutation> images;
      for (const auto& w : fixtures::all_words(k, n)) images.insert(apply_word(s, w));
      std::size_t members = 0;
      for (const auto& p : all_permutations(n)) members += analysis::is_member(p, s);
      v.expect(images == oracle::brute_members(s, n) && images.size() == members,
               "[" + text + "] n=" + std::to_string(n) + ": " + std::to_string(images.size()) + " images, " +
                   std::to_string(members) + " members");
    }
  }
  v.note("1000 samples of length <= 7 per matrix, onto for n <= 6");
}

// 3. One accepted word per member, one normal form per gridded member.
void counting(Verdict& v) {
  for (const auto& text : fixtures::suite()) {
    const auto s = signed_matrix(text);
    std::vector<automata::BigInt> members, gridded;
    for (std::size_t n = 0; n <= 8; ++n) {
      members.emplace_back(oracle::brute_members(s, n).size());
      gridded.emplace_back(oracle::brute_gridded(s, n).size());
    }
    try {
      const auto nf = automata::compile(mso::trace_nf_sentence(s), s.alphabet_size());
      const auto counts = automata::count_sequence(nf, 8);
      v.expect(counts == gridded, "[" + text + "] gridded " + list(counts) + " vs " + list(gridded));
    } catch (const BudgetExceeded& e) {
      v.expect(false, "[" + text + "] gridded: " + e.what());
    }
    try {
      const auto bij = automata::compile(mso::bij_sentence(s), s.alphabet_size());
      const auto counts = automata::count_sequence(bij, 8);
      v.expect(counts == members, "[" + text + "] members " + list(counts) + " vs " + list(members));
    } catch (const BudgetExceeded& e) {
      std::string what = e.what();
      v.expect(false, "[" + text + "] one word per member: " + what.substr(0, what.find(" [")));
    }
  }
  v.note("n <= 8");
}

// 4. Generating functions.
void generating_functions(Verdict& v) {
  const std::map<std::string, std::string> expected{{"1", "x/(1 - x)"}, {"1 -1", "x/(1 - 2x)"}, {"1 / 1", "x/(1 - 2x)"}};
  for (const auto& text : fixtures::suite()) {
    const auto s = signed_matrix(text);
    try {
      const auto a = analysis::counting_automaton(s, std::nullopt, false);
      const auto gf = transfer_matrix_gf(a);
      const auto series = gf.series(21);
      auto counts = automata::count_sequence(a, 20);
      counts[0] = 0;
      v.expect(series == counts, "[" + text + "] series " + list(series) + " vs counts " + list(counts));
      if (const auto it = expected.find(text); it != expected.end())
        v.expect(gf.to_string() == it->second,
                 "[" + text + "] " + gf.to_string() + " (coefficients " + list(gf.series(9)) + "), expected " +
                     it->second);
    } catch (const BudgetExceeded& e) {
      std::string what = e.what();
      v.expect(false, "[" + text + "] " + what.substr(0, what.find(" [")));
    }
  }
}

// 5. Bounded bases against the oracle.
void bounded_bases(Verdict& v) {
  for (const auto& text : fixtures::suite()) {
    const auto s = signed_matrix(text);
    analysis::BasisOptions opts;
    opts.max_length = 6;
    const auto r = analysis::compute_basis(s, opts);
    const auto expected = oracle::brute_basis(s, 6);
    v.expect(r.elements == expected, "[" + text + "] " + list(r.elements) + " vs " + list(expected));
    v.expect(r.mode == analysis::BasisMode::bounded && r.length == 6, "[" + text + "] wrong mode");
  }
  v.note("lengths <= 6");
}

// 6. Certified basis of the increasing class.
void certified_basis(Verdict& v) {
  const auto s = signed_matrix("1");
  const auto start = std::chrono::steady_clock::now();
  analysis::BasisOptions opts;
  opts.extension_matrix = analysis::small_extension_matrix_for_increasing();
  const auto r = analysis::compute_basis(s, opts);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.expect(r.elements == perms("21"), "basis " + list(r.elements));
  v.expect(r.mode == analysis::BasisMode::certified_complete && r.certificate && r.certificate->universal,
           "not certified");
  v.expect(seconds <= 300, "took " + std::to_string(seconds) + " s");
  v.note("certified with a 3x3 extension matrix in " + std::to_string(seconds).substr(0, 4) + " s");

  const auto universal = one_point_extension_matrix(s);
  v.expect(universal.matrix.rows() == 4 && universal.matrix.cols() == 324, "universal matrix has the wrong shape");
  analysis::BasisOptions fallback;
  fallback.budget.max_seconds = 60;
  try {
    const auto d = analysis::compute_basis(s, fallback);
    if (d.budget_exhausted) {
      v.expect(!d.diagnostic.empty(), "budget failure without a diagnostic");
      v.expect(d.mode == analysis::BasisMode::bounded, "failed certification still claims completeness");
      v.note("universal " + std::to_string(universal.matrix.rows()) + "x" + std::to_string(universal.matrix.cols()) +
             " matrix: " + d.diagnostic.substr(0, d.diagnostic.find(" [")));
    } else {
      v.expect(d.elements == perms("21"), "universal matrix basis " + list(d.elements));
      v.note("universal matrix certified");
    }
  } catch (const std::exception& e) {
    v.expect(false, std::string("universal matrix failure escaped: ") + e.what());
  }
}

// 7. Subclasses.
void subclasses(Verdict& v) {
  const auto simple = analysis::generating_function(signed_matrix("1"), analysis::SubclassSpec::builtin(analysis::Builtin::simple));
  v.expect(simple.gf.to_string() == "x + x^2", "simple members of [1]: " + simple.gf.to_string());

  const std::vector<std::pair<std::string, std::string>> cases{
      {"1 -1", "123"}, {"1 / 1", "231"}, {"1 1", "321; 123"}, {"1 0 / 0 1", "12"}, {"1 1 / 1 -1", "4321"}};
  for (const auto& [text, avoid] : cases) {
    const auto s = signed_matrix(text);
    const auto patterns = perms(avoid);
    std::vector<std::set<Permutation>> members;
    for (std::size_t n = 0; n <= 6; ++n) {
      members.emplace_back();
      for (const auto& p : oracle::brute_members(s, n))
        if (std::none_of(patterns.begin(), patterns.end(), [&](const auto& q) { return oracle::occurs_in(q, p); }))
          members.back().insert(p);
    }
    analysis::SubclassOptions opts;
    opts.max_length = 6;
    const auto r = analysis::subclass_basis(s, analysis::SubclassSpec::avoiding(patterns), opts);
    const auto expected = oracle::minimal_non_members(members);
    v.expect(r.elements == expected, "[" + text + "] avoiding " + avoid + ": " + list(r.elements) + " vs " + list(expected));
  }

  const std::vector<std::pair<std::string, analysis::SubclassSpec>> refused{
      {"contains 21", analysis::SubclassSpec::sentence(mso::contains_copy(fixtures::perm("21")))},
      {"sum-indecomposable", analysis::SubclassSpec::builtin(analysis::Builtin::sum_indecomposable)}};
  for (const auto& [name, spec] : refused) {
    bool was_refused = false;
    try {
      analysis::SubclassOptions opts;
      opts.max_length = 5;
      analysis::subclass_basis(signed_matrix("1 -1"), spec, opts);
    } catch (const analysis::SpecRefused&) {
      was_refused = true;
    }
    v.expect(was_refused, name + " subclass of [1 -1] accepted");
  }
  v.note("x + x^2, 5 avoidance subclasses to length 6, 2 refusals");
}

// 8. Substitution-closure bases.
void substitution_closure(Verdict& v) {
  for (const auto& [text, expected] : std::vector<std::pair<std::string, std::string>>{{"1", "21"}, {"1 -1", "2413; 3142"}}) {
    const auto s = signed_matrix(text);
    analysis::ClosureOptions opts;
    opts.max_length = 6;
    const auto r = analysis::substitution_closure_basis(s, opts);
    std::vector<std::set<Permutation>> members;
    for (std::size_t n = 0; n <= 6; ++n) members.push_back(oracle::brute_members(s, n));
    const auto reference = oracle::minimal_simple_non_members(members);
    v.expect(r.elements == perms(expected), "[" + text + "] " + list(r.elements));
    v.expect(r.elements == reference, "[" + text + "] oracle gives " + list(reference));
    v.expect(r.mode == analysis::BasisMode::bounded, "[" + text + "] not bounded mode");
  }
  v.note("bounded to length 6");
}

// 9. Random sentences: compiled automata agree with the model checker and
// are canonical.
void random_sentences(Verdict& v) {
  fixtures::RandomSentences gen(2, 12345);
  std::vector<std::vector<Word>> words;
  for (std::size_t n = 0; n <= 5; ++n) words.push_back(fixtures::all_words(2, n));
  std::size_t mismatches = 0, non_canonical = 0, total_states = 0;
  for (int i = 0; i < 500; ++i) {
    const auto f = gen.next(4);
    automata::Compiler compiler(2);
    const auto a = compiler.compile(f);
    total_states += a.states();
    for (const auto& batch : words)
      for (const auto& w : batch)
        if (automata::accepts(a, w) != mso::model_check(mso::FiniteStructure::from_word(w, 2), f)) {
          if (mismatches++ == 0) v.expect(false, "first mismatch: " + mso::to_text(f));
        }
    const bool canonical = automata::isomorphic(a, automata::minimize(a)) &&
                           automata::isomorphic(a, compiler.compile(mso::negate(mso::negate(f)))) &&
                           automata::isomorphic(a, automata::compile(mso::disj({f, f}), 2));
    if (!canonical && non_canonical++ == 0) v.expect(false, "not canonical: " + mso::to_text(f));
  }
  v.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
  v.expect(non_canonical == 0, std::to_string(non_canonical) + " non-canonical");
  v.note("500 sentences, words of length <= 5, " + std::to_string(total_states) + " states in total");
}

// 10. Length bound from the basis-element automaton.
void length_bound(Verdict& v) {
  analysis::BoundOptions opts;
  opts.extension_matrix = analysis::small_extension_matrix_for_increasing();
  const auto r = analysis::basis_length_bound(signed_matrix("1"), opts);
  v.expect(r.language.kind == automata::LanguageLength::Kind::finite, "language not finite");
  v.expect(r.bound == 2, "longest basis element " + std::to_string(r.bound));
  v.expect(r.bound < r.states, "bound not below the state count");
  v.note("max length " + std::to_string(r.bound) + ", " + std::to_string(r.states) + " states");
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::size_t> only;  // criterion numbers given on the command line
  for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
  struct Check {
    std::string name;
    std::function<void(Verdict&)> run;
    double limit_seconds = 0;  // 0 for none
  };
  const std::vector<Check> checks{
      {"membership triple agreement", membership_agreement, 600},
      {"word map properties", word_map_properties},
      {"counting automata", counting, 600},
      {"generating functions", generating_functions},
      {"bounded bases", bounded_bases},
      {"certified basis of [1]", certified_basis},
      {"subclasses", subclasses},
      {"substitution-closure bases", substitution_closure},
      {"random MSO sentences", random_sentences},
      {"basis length bound", length_bound},
  };
  int failed = 0;
  std::size_t ran = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (!only.empty() && !only.contains(i + 1)) continue;
    ++ran;
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      checks[i].run(v);
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (checks[i].limit_seconds > 0)
      v.expect(seconds <= checks[i].limit_seconds, "over the " + std::to_string(int(checks[i].limit_seconds)) + " s limit");
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << checks[i].name << " ("
              << std::to_string(seconds).substr(0, std::to_string(seconds).find('.') + 2) << " s): " << v.detail.str()
              << std::endl;
  }
  std::cout << ran - failed << "/" << ran << " passed" << std::endl;
  return failed;
}
