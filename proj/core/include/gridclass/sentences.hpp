#pragma once

#include <string>
#include <vector>

#include "gridclass/budget.hpp"
#include "gridclass/formula.hpp"
#include "gridclass/grid.hpp"
#include "gridclass/permutation.hpp"

namespace gridclass::mso {

/// "Y1", ..., "Yn" for stem "Y".
std::vector<std::string> numbered(const std::string& stem, std::size_t n);

/// Every element lies in exactly one of `sets`.
FormulaPtr partition_clause(const std::vector<std::string>& sets);

/// The cell-assignment constraints for candidate cells `sets` (one per cell
/// of `s`): a partition, each cell monotone in its direction, and cells in
/// distinct columns (rows) ordered like their columns (rows).
FormulaPtr mon_prime(const SignedGridMatrix& s, const std::vector<std::string>& sets);

/// "x is closer to its cell's origin than y" for points sharing a row or a
/// column under the assignment `sets`.
FormulaPtr d_formula(const SignedGridMatrix& s, const std::vector<std::string>& sets, const std::string& x,
                     const std::string& y);

/// No directed cycle of `relation` (free in `x`, `y`): there is no nonempty
/// set in which every element has exactly one predecessor and exactly one
/// successor.
FormulaPtr acyc(const FormulaPtr& relation, const std::string& x, const std::string& y);

/// Sentence over {<1, <2} satisfied exactly by the members of Geom(s).
FormulaPtr geom_sentence(const SignedGridMatrix& s);

/// Sentence over {<1, <2, C_i} satisfied by the lexicographically least
/// gridding of each member.
FormulaPtr min_sentence(const SignedGridMatrix& s);

/// No split into two nonempty parts with one entirely below-left of the other.
FormulaPtr sum_ind();
/// No split into two nonempty parts with one entirely above-left of the other.
FormulaPtr skew_ind();
/// No interval: no set of at least two but not all points that is convex
/// in both orders.
FormulaPtr simple_sentence();

/// Some points form an occurrence of `pattern`.
FormulaPtr contains_copy(const Permutation& pattern);
/// Avoids every pattern in `patterns`.
FormulaPtr avoids_all(const std::vector<Permutation>& patterns);

/// not Geom(s) implies some element of `basis` occurs.
FormulaPtr basis_sentence(const std::vector<Permutation>& basis, const SignedGridMatrix& s);
/// not (Geom(s) and `extra`) implies some element of `basis` occurs.
FormulaPtr subclass_basis_sentence(const std::vector<Permutation>& basis, const SignedGridMatrix& s,
                                   const FormulaPtr& extra);
/// (not Geom(s) and simple) implies some element of `basis` occurs.
FormulaPtr simple_basis_sentence(const std::vector<Permutation>& basis, const SignedGridMatrix& s);

/// Words in lexicographic normal form for the commutation of cells that
/// share neither a row nor a column.
FormulaPtr trace_nf_sentence(const SignedGridMatrix& s);
/// trace_nf and the word translation of min_sentence: one word per member.
FormulaPtr bij_sentence(const SignedGridMatrix& s, const Budget& budget = {});

/// Restricts every element quantifier of `f` to the set variable `set`.
FormulaPtr relativize(const FormulaPtr& f, const std::string& set);

/// Satisfied exactly by the basis elements of Geom(s): not a member, and
/// deleting any single point gives a member.
FormulaPtr basis_p_sentence(const SignedGridMatrix& s);

/// Translation of a sentence over {<1, <2} or {<1, <2, C_i} into the word
/// signature of `s`'s cells: w satisfies the result iff the (gridded)
/// permutation encoded by w satisfies `f`. Throws SignatureError for atoms
/// outside the source signature and BudgetExceeded when the translated
/// formula would exceed `budget.max_formula_nodes`.
FormulaPtr interpret(const FormulaPtr& f, const SignedGridMatrix& s, const Budget& budget = {});

}  // namespace gridclass::mso
