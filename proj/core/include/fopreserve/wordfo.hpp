#pragma once

#include <string>
#include <vector>

#include "fopreserve/dfa.hpp"
#include "fopreserve/formula.hpp"
#include "fopreserve/modellab.hpp"
#include "fopreserve/structure.hpp"
#include "fopreserve/vocabulary.hpp"

namespace fopreserve {

// The word vocabulary of an alphabet: leq/2, then one unary letter predicate
// P<letter> per letter in alphabet order. No constants.
Vocabulary word_vocab(const std::vector<char>& alphabet);

// Positions 0..|w|-1 with leq the position order and the letter predicates
// partitioning the universe. The empty word has no structure.
Structure word_to_structure(const std::string& w, const std::vector<char>& alphabet);

// All words with length in [minLen, maxLen], by length then lexicographically
// in alphabet order.
std::vector<std::string> words_up_to(const std::vector<char>& alphabet, int maxLen,
                                     int minLen = 0);

// Compiles a first-order sentence over word_vocab(alphabet) to the canonical
// minimal automaton of { nonempty w : word_to_structure(w) satisfies phi }.
// The empty word is never accepted (word structures are nonempty). Variable
// positions ride on expanded letter tracks; every intermediate automaton is
// minimized. Set quantifiers are out of scope.
Dfa compile_word_fo(const FormulaPtr& phi, const std::vector<char>& alphabet);

// Checks phi against its relativized form exists^B forall^N phi| with
// N = (B+1) * D.stateCount on every nonempty word of length <= maxLen.
// D must agree with phi on all those words (precondition_error naming the
// first offending word otherwise). A Counterexample verdict carries the
// first splitting word in length-then-lex order.
Verdict verify_words_theorem(const FormulaPtr& phi, const Dfa& D, int B, int maxLen);

}  // namespace fopreserve
