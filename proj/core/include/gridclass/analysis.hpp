#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gridclass/automaton.hpp"
#include "gridclass/budget.hpp"
#include "gridclass/errors.hpp"
#include "gridclass/formula.hpp"
#include "gridclass/gf.hpp"
#include "gridclass/grid.hpp"
#include "gridclass/permutation.hpp"

namespace gridclass::analysis {

struct MembershipResult {
  bool member = false;
  std::optional<GriddedPermutation> witness;
};

/// Backtracking over cell assignments in position order, pruned by the
/// pairwise monotonicity and ordering constraints; complete assignments are
/// accepted when the closer-to-origin relation is acyclic.
MembershipResult membership(const Permutation& p, const SignedGridMatrix& s);
bool is_member(const Permutation& p, const SignedGridMatrix& s);

/// Refusal of a subclass that is not closed under taking patterns.
class SpecRefused : public Error {
 public:
  using Error::Error;
};

enum class BasisMode { certified_complete, bounded };

struct Certificate {
  std::string sentence;        // short description of the decided sentence
  std::string extension;       // matrix whose words were checked, inline form
  std::size_t letters = 0;
  std::size_t states = 0;
  bool universal = false;
  bool extension_validated_only = false;  // user-supplied matrix, coverage checked up to a length
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct BasisResult {
  std::vector<Permutation> elements;  // by length, then lexicographically
  BasisMode mode = BasisMode::bounded;
  std::size_t length = 0;             // all lengths up to this one were scanned
  std::optional<Certificate> certificate;
  bool budget_exhausted = false;
  bool caveat = false;                // completeness rests on an unverified matrix
  std::string diagnostic;
  friend bool operator==(const BasisResult&, const BasisResult&) = default;
};

struct ExtensionCheck {
  bool passed = true;
  std::size_t length = 0;
  std::optional<Permutation> counterexample;  // an extension outside Geom(N)
};

/// Every one-point extension of a member of Geom(s) of length at most
/// `length` must lie in Geom(n). Necessary for `n` to serve as an extension
/// matrix, not sufficient.
ExtensionCheck check_extension_matrix(const SignedGridMatrix& s, const GridMatrix& n, std::size_t length);

/// The 3x3 matrix with increasing cells at the corners and the centre. Its
/// class holds every one-point extension of an increasing permutation.
GridMatrix small_extension_matrix_for_increasing();

struct BasisOptions {
  std::optional<GridMatrix> extension_matrix;
  std::optional<std::size_t> max_length;  // bounded mode: scan up to here, no certificate
  std::size_t certify_limit = 10;         // give up certifying past this length
  std::size_t sanity_length = 5;
  Budget budget;
};

/// Minimal non-members by increasing length. Without `max_length`, the
/// candidate set is certified after each completed length by deciding over
/// the words of the extension matrix.
BasisResult compute_basis(const SignedGridMatrix& s, const BasisOptions& opts = {});

struct BoundOptions {
  std::optional<GridMatrix> extension_matrix;
  std::size_t sanity_length = 5;
  Budget budget;
};

struct BoundResult {
  automata::LanguageLength language;
  std::size_t states = 0;
  std::size_t bound = 0;  // longest accepted word when finite, else states - 1
};

/// Compiles the sentence defining the basis elements over the extension
/// matrix's words and measures the accepted language.
BoundResult basis_length_bound(const SignedGridMatrix& s, const BoundOptions& opts = {});

enum class Builtin { simple, sum_indecomposable, skew_indecomposable };

/// An extra condition selecting a subclass of Geom(M).
class SubclassSpec {
 public:
  static SubclassSpec sentence(mso::FormulaPtr f);
  static SubclassSpec avoiding(std::vector<Permutation> patterns);
  static SubclassSpec builtin(Builtin b);

  /// Sentence over {<1, <2}.
  mso::FormulaPtr formula() const;
  bool holds(const Permutation& p, const Budget& budget = {}) const;
  std::string describe() const;

 private:
  std::variant<mso::FormulaPtr, std::vector<Permutation>, Builtin> what_;
};

struct ClosureCheck {
  std::size_t length = 6;        // every member up to this length
  std::size_t samples = 200;     // plus images of random words of the next two lengths
  std::uint64_t seed = 1;
};

/// A member of the subclass with a one-point deletion outside it, as
/// (member, deletion).
std::optional<std::pair<Permutation, Permutation>> downward_closure_violation(const SignedGridMatrix& s,
                                                                            const SubclassSpec& spec,
                                                                            const ClosureCheck& check = {},
                                                                            const Budget& budget = {});

struct GFOptions {
  bool gridded = false;        // count gridded permutations instead
  bool include_empty = false;  // keep the length-0 term
  Budget budget;
};

struct GFResult {
  RationalGF gf;
  std::size_t states = 0;
  std::vector<BigInt> series;  // 12 terms from x^1, or from x^0 with include_empty
};

/// Automaton accepting one word per member (or per gridded member), further
/// restricted by `spec`.
automata::Automaton counting_automaton(const SignedGridMatrix& s, const std::optional<SubclassSpec>& spec,
                                       bool gridded, const Budget& budget = {});

GFResult generating_function(const SignedGridMatrix& s, const std::optional<SubclassSpec>& spec = std::nullopt,
                             const GFOptions& opts = {});

struct SubclassOptions {
  std::optional<GridMatrix> extension_matrix;
  std::optional<std::size_t> max_length;
  std::size_t certify_limit = 10;
  std::size_t sanity_length = 5;
  ClosureCheck closure;
  Budget budget;
};

/// Basis of Geom(M) intersected with the subclass. Throws SpecRefused when
/// the subclass is seen not to be closed under patterns.
BasisResult subclass_basis(const SignedGridMatrix& s, const SubclassSpec& spec, const SubclassOptions& opts = {});

/// [1 1], [1;1], [-1 -1] and [-1;-1] placed block-diagonally.
GridMatrix default_alternation_matrix();

struct ClosureOptions {
  std::optional<GridMatrix> alternation_matrix;
  std::optional<GridMatrix> extension_matrix;
  std::optional<std::size_t> max_length;
  std::size_t certify_limit = 10;
  std::size_t sanity_length = 5;
  Budget budget;
};

/// Minimal simple permutations outside Geom(M): the basis of its
/// substitution closure.
BasisResult substitution_closure_basis(const SignedGridMatrix& s, const ClosureOptions& opts = {});

}  // namespace gridclass::analysis
