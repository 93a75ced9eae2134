#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fopreserve/dfa.hpp"
#include "fopreserve/formula.hpp"

namespace fopreserve {

// Record of one subsequence extraction, 0-based throughout.
struct ExtractionTrace {
  std::string inputWord;
  std::vector<int> positionsA;             // sorted marked positions
  std::vector<std::vector<int>> segments;  // kept positions per segment
  std::string output;
  std::vector<std::pair<int, int>> outputPositions;  // input pos -> output pos
};

// Compresses w to a subsequence that ends the automaton in the same state,
// keeps every marked position, and has length at most (|A|+1) * stateCount.
// Segments run between consecutive marked positions. Within a segment the
// greedy rule keeps, for the state at the cursor, the last position sharing
// that state, then jumps past it. A segment that opens at a marked position
// keeps it unconditionally and additionally stops as soon as the segment's
// exit state is reached, which restores the per-segment length bound that
// the unconditional keep would otherwise break.
ExtractionTrace extract_subword(const Dfa& D, const std::string& w,
                                const std::vector<int>& A);

// Canonical automaton for { u : u is a subsequence of some v in L(D) }.
Dfa subword_closure(const Dfa& D);

bool is_subword_closed(const Dfa& D);

// Canonical automaton for { w : some basis word is a subsequence of w }.
Dfa superword_closure(const std::vector<std::string>& basis,
                      const std::vector<char>& alphabet);

// The finite antichain of subsequence-minimal words outside L(D), in length
// then alphabet-lexicographic order. Requires a subsequence-closed language;
// the search is complete once the superword closure of the collected basis
// matches the complement.
std::vector<std::string> higman_basis(const Dfa& D);

// Universal sentence over the word vocabulary defining L(D) on nonempty
// words, built by forbidding every basis word as an induced substructure.
// When the basis is the empty word alone (empty language), returns the
// unsatisfiable "forall x1. ~(x1 = x1)".
FormulaPtr pi1_sentence_for_language(const Dfa& D);

}  // namespace fopreserve
