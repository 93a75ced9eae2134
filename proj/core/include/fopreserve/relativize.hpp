#pragma once

#include <string>
#include <vector>

#include "fopreserve/formula.hpp"
#include "fopreserve/structure.hpp"
#include "fopreserve/vocabulary.hpp"

namespace fopreserve {

// Result of rewriting a sentence so that it speaks only about the elements
// named by `vars` and the vocabulary constants. `result` is quantifier-free
// with free variables among `vars`; for every structure M and assignment
// x̄ ↦ ā, eval(M, result, x̄↦ā) ⟺ eval(induced(M, set(ā)), base).
struct RelativizedFormula {
  FormulaPtr base;
  std::vector<std::string> vars;
  FormulaPtr result;
};

// First-order rewriting: every "forall x" becomes "~exists x", and every
// "exists x" becomes the disjunction of the body instantiated at each of
// `vars` and each vocabulary constant, outermost first. No Boolean
// simplification is applied. Preconditions: sentence, set-free, `vars`
// fresh (not occurring anywhere in the sentence), distinct, not vocabulary
// symbols; `vars` nonempty unless the vocabulary has constants.
RelativizedFormula relativize_fo(const Vocabulary& vocab, const FormulaPtr& phi,
                                 const std::vector<std::string>& vars);

// Extension handling set quantifiers: the body is rewritten first, then
// "Exists X" becomes a disjunction over subsets Y of vars-plus-constants,
// each disjunct guarded by the conjunction of ~(t = t') for t in Y, t'
// outside Y (so Y is closed under equal values), with each set atom X(t)
// replaced by "t = t" when t is in Y and "~(t = t)" otherwise.
// "Forall X" is rewritten as "~Exists X ~". The result is set-free.
RelativizedFormula relativize_mso(const Vocabulary& vocab, const FormulaPtr& phi,
                                  const std::vector<std::string>& vars);

// The candidate normal form: exists x1..xB. forall y1..yn. phi|_{x̄ȳ}.
// Dispatches to relativize_mso when phi has set nodes. B = n = 0 yields the
// bare relativization to constants (error if there are none).
FormulaPtr build_psi(const Vocabulary& vocab, const FormulaPtr& phi, int B, int n);

// Conjunction of every atomic and negated atomic fact of M, written with one
// fresh constant per element (e0, e1, ...; the prefix doubles to ee, eeee,
// ... on a name clash). Facts come first (declared predicate order, tuple
// index order), then the pairwise inequalities of the fresh constants, then
// one equality per original constant locating it among the fresh ones.
struct Diagram {
  Vocabulary vocab;  // M's vocabulary plus the fresh constants
  FormulaPtr delta;
};
Diagram diagram(const Structure& M);

// Universal sentence satisfied by exactly the structures into which no
// member of `forbidden` embeds as an induced substructure: the conjunction
// over members of "forall x1..xn. ~diagram", diagram constants renamed to
// variables. Empty list yields the valid sentence "forall x1. x1 = x1".
// Preconditions: every member's vocabulary has `vocab`'s symbols; no
// constants.
FormulaPtr pi1_from_forbidden(const Vocabulary& vocab,
                              const std::vector<Structure>& forbidden);

// With k declared unary predicates there are 2^k conjunctions of one
// positive or negated literal per predicate ("1-types"); sigma_i uses the
// binary encoding where bit j of i says the j-th predicate holds. Returns
// exists x. forall y. the conjunction over i of sigma_i(x) -> ~sigma_{i+1
// mod 2^k}(y).
FormulaPtr type_cycle_sentence(const std::vector<std::string>& unaryPreds);

}  // namespace fopreserve
