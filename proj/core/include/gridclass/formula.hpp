#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace gridclass::mso {

enum class Sort : unsigned char { element, set };

enum class Kind : unsigned char {
  truth,      // constant true
  falsity,    // constant false
  order1,     // x <_1 y   (permutations: left of)
  order2,     // x <_2 y   (permutations: below)
  word_order, // x < y     (words: earlier position)
  equal,      // x = y
  cell,       // C_i(x)    (gridded permutations)
  letter,     // U_i(x)    (words)
  member,     // x in X
  negation,
  conjunction,
  disjunction,
  implication,
  equivalence,
  exists,
  forall,
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable node of an MSO abstract syntax tree. Build with the free
/// functions below; nodes are shared freely between trees.
class Formula {
 public:
  Kind kind() const noexcept { return kind_; }
  /// Atom arguments: `first` and `second` (binary relations, equality),
  /// `first` only (unary labels), `first` element and `second` set (member).
  const std::string& first() const noexcept { return first_; }
  const std::string& second() const noexcept { return second_; }
  /// Index of the cell/letter for unary label atoms.
  std::size_t label() const noexcept { return label_; }
  /// Bound variable and its sort for quantifiers.
  const std::string& variable() const noexcept { return first_; }
  Sort sort() const noexcept { return sort_; }
  const std::vector<FormulaPtr>& children() const noexcept { return children_; }
  const FormulaPtr& child(std::size_t i = 0) const { return children_.at(i); }

  bool is_atom() const noexcept { return kind_ <= Kind::member; }
  bool is_quantifier() const noexcept { return kind_ == Kind::exists || kind_ == Kind::forall; }

  static FormulaPtr make(Kind kind, std::string first, std::string second, std::size_t label, Sort sort,
                         std::vector<FormulaPtr> children);

 private:
  Kind kind_ = Kind::truth;
  Sort sort_ = Sort::element;
  std::size_t label_ = 0;
  std::string first_;
  std::string second_;
  std::vector<FormulaPtr> children_;
};

// Constructors -------------------------------------------------------------

FormulaPtr top();
FormulaPtr bottom();
FormulaPtr lt1(const std::string& x, const std::string& y);
FormulaPtr lt2(const std::string& x, const std::string& y);
FormulaPtr lt(const std::string& x, const std::string& y);
FormulaPtr eq(const std::string& x, const std::string& y);
FormulaPtr cell(std::size_t i, const std::string& x);
FormulaPtr letter(std::size_t i, const std::string& x);
FormulaPtr member(const std::string& x, const std::string& set);

FormulaPtr negate(FormulaPtr f);
/// Empty conjunction is true, empty disjunction is false; singletons are unwrapped.
FormulaPtr conj(std::vector<FormulaPtr> parts);
FormulaPtr disj(std::vector<FormulaPtr> parts);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);

FormulaPtr exists(const std::string& x, FormulaPtr body);
FormulaPtr forall(const std::string& x, FormulaPtr body);
FormulaPtr exists_set(const std::string& x, FormulaPtr body);
FormulaPtr forall_set(const std::string& x, FormulaPtr body);
/// Nested quantifiers, outermost first.
FormulaPtr exists_many(const std::vector<std::string>& xs, FormulaPtr body);
FormulaPtr forall_many(const std::vector<std::string>& xs, FormulaPtr body);
FormulaPtr exists_sets(const std::vector<std::string>& xs, FormulaPtr body);
FormulaPtr forall_sets(const std::vector<std::string>& xs, FormulaPtr body);

/// Exists x with phi(x), expanded at construction to
/// exists x (phi(x) and forall z (phi(z) -> z = x)) with z fresh.
FormulaPtr exists_unique(const std::string& x, const FormulaPtr& body);

// Variables ----------------------------------------------------------------

struct FreeVariable {
  std::string name;
  Sort sort;
  friend bool operator==(const FreeVariable&, const FreeVariable&) = default;
};

/// Free variables in order of first occurrence. Sorts are inferred from use
/// (set when the variable appears as the right side of a membership atom).
std::vector<FreeVariable> free_variables(const FormulaPtr& f);

/// Every variable name occurring in `f`, free or bound.
std::vector<std::string> all_variable_names(const FormulaPtr& f);

/// Capture-avoiding renaming of free variables; binders that would capture a
/// substituted name are renamed deterministically (primes appended).
FormulaPtr rename_free(const FormulaPtr& f, const std::map<std::string, std::string>& renaming);

/// Number of nodes counting shared subtrees once per occurrence.
std::size_t tree_size(const FormulaPtr& f);

// Signatures ---------------------------------------------------------------

/// A relational vocabulary. Equality is always available.
struct Signature {
  std::string name;
  bool order1 = false;
  bool order2 = false;
  bool word_order = false;
  std::size_t cells = 0;    // number of C_i predicates
  std::size_t letters = 0;  // number of U_i predicates

  /// {<_1, <_2}
  static Signature permutations();
  /// {<_1, <_2, C_1..C_n}
  static Signature gridded_permutations(std::size_t n);
  /// {<, U_1..U_n}
  static Signature words(std::size_t n);

  bool admits(const FormulaPtr& f) const;
  /// Throws SignatureError naming the first offending atom.
  void check(const FormulaPtr& f) const;
};

// Text form ----------------------------------------------------------------
//
//   formula := true | false
//            | (<1 x y) | (<2 x y) | (< x y) | (= x y)
//            | (C i x) | (U i x)          ; i is 1-based
//            | (in x X)
//            | (not f) | (and f...) | (or f...) | (implies f g) | (iff f g)
//            | (exists x f) | (forall x f)            ; element variables
//            | (exists-set X f) | (forall-set X f)    ; set variables
//
// ';' starts a comment that runs to the end of the line.

std::string to_text(const FormulaPtr& f);
/// Throws InputError with line and column on malformed input.
FormulaPtr parse_formula(std::string_view text);

/// Structural equality (same tree shape, names, labels).
bool same_structure(const FormulaPtr& a, const FormulaPtr& b);

}  // namespace gridclass::mso
