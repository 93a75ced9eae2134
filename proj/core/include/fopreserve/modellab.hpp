#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fopreserve/formula.hpp"
#include "fopreserve/structure.hpp"

namespace fopreserve {

enum class VerdictStatus { PassUpTo, Counterexample };

// Everything needed to re-check a counterexample from first principles.
struct CounterWitness {
  std::optional<Structure> model;
  std::optional<std::vector<int>> subset;              // universe subset, ascending
  std::optional<std::vector<std::vector<int>>> cover;  // cover member subsets
  std::optional<std::string> word;
  std::optional<bool> lhs;
  std::optional<bool> rhs;
  std::string note;
};

// Outcome of a bounded search; PassUpTo never claims more than the bound.
struct Verdict {
  VerdictStatus status = VerdictStatus::PassUpTo;
  int boundChecked = 0;
  std::optional<CounterWitness> witness;
};

// Cores of a model with respect to a sentence, optionally compared against
// the witness tuples of an existential prefix.
struct CoreReport {
  Structure model;
  FormulaPtr sentence;
  std::vector<std::vector<int>> minimalCores;  // antichain, (size, lex) order
  int coreBound = 0;
  std::optional<std::vector<std::vector<int>>> witnesses;  // B-tuples, lex order
  std::optional<bool> witnessSetsAreCores;
  std::optional<bool> coresYieldWitnesses;
};

// True iff every induced substructure of M whose universe contains C and
// the constants satisfies phi (exhaustive over all supersets). Throws
// precondition_error unless M satisfies phi.
bool is_core(const Structure& M, const std::vector<int>& C, const FormulaPtr& phi);

// All minimal cores in (size, lex) order; coreBound is the smallest size.
CoreReport minimal_cores(const Structure& M, const FormulaPtr& phi);

// Searches all structures up to maxSize for a model of phi with an induced
// substructure falsifying phi. First hit in enumeration order is reported.
Verdict ps_check(const Vocabulary& vocab, const FormulaPtr& phi, int maxSize);

// Searches for a model of phi with no core of size <= B.
Verdict psc_check(const Vocabulary& vocab, const FormulaPtr& phi, int B, int maxSize);

// First structure (size, then enumeration order) where the two sentences
// have different truth values.
Verdict check_equiv_upto(const Vocabulary& vocab, const FormulaPtr& phi,
                         const FormulaPtr& psi, int maxSize);

// True iff the members jointly cover the universe and every subset of size
// <= k lies inside a single member. Members are universe subsets.
bool is_k_cover(const Structure& M, const std::vector<std::vector<int>>& members, int k);

// Searches structures up to maxSize (capped at 4) for a non-model of phi
// that has a k-cover by proper induced substructures all satisfying phi.
// Cover families are antichains of subsets, explored in (size, lex) order.
Verdict kcover_preservation_check(const Vocabulary& vocab, const FormulaPtr& phi,
                                  int k, int maxSize);

// Three stages: phi needs a core of size <= k, ~phi a core of size <= l,
// and phi must match its Exists^k Forall^l relativization. The first
// failing stage is reported; the note names it.
Verdict delta_classify(const Vocabulary& vocab, const FormulaPtr& phi, int k, int l,
                       int maxSize);

// Witness tuples of the Exists^B prefix versus the cores of M. When phi
// itself is an Exists^B Forall^* sentence the witnesses are read off phi's
// own matrix; otherwise they come from the relativized prefix.
CoreReport witness_core_report(const FormulaPtr& phi, int B, int n, const Structure& M);

// Truth value of the Exists^B Forall^n relativization of phi in M, computed
// through the subset semantics instead of materializing the formula: there
// must be a set A of at most B elements such that every nonempty set T of
// at most n elements keeps the substructure induced by A, T and the
// constants a model of phi.
bool psi_holds(const Structure& M, const FormulaPtr& phi, int B, int n);

// Equivalence sweep of phi against its relativization with psi_holds as
// the fast path; a difference is re-validated against the materialized
// formula before it is reported.
Verdict check_psi_equiv(const Vocabulary& vocab, const FormulaPtr& phi, int B, int n,
                        int maxSize);

}  // namespace fopreserve
