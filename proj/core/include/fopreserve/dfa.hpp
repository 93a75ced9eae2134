#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fopreserve {

// Total deterministic automaton over single-character letters. The alphabet
// order is part of the identity: printing, separating words, and canonical
// numbering all follow it.
struct Dfa {
  std::vector<char> alphabet;
  int stateCount = 0;
  int start = 0;
  std::vector<bool> accepting;          // indexed by state
  std::vector<std::vector<int>> delta;  // [state][letter index] -> state

  int letter_index(char c) const;  // -1 when the letter is foreign
  void validate() const;
};

// Text format (all transitions mandatory):
//   dfa over {a,b} { states=2; start=0; accepting={1}; 0,a->1; 0,b->0;
//                    1,a->1; 1,b->1; }
Dfa parse_dfa(const std::string& text);
std::string print_dfa(const Dfa& d);

// Standard execution from the start state; empty word allowed.
std::pair<int, bool> dfa_run(const Dfa& d, const std::string& w);

// Canonical minimization: partition refinement on the reachable part, then
// states renumbered breadth-first from the start with letters in alphabet
// order. Two automata accept the same language iff their canonical forms
// are identical field for field.
Dfa dfa_minimize(const Dfa& d);

// Language operations; results are canonically minimized.
Dfa dfa_complement(const Dfa& d);
Dfa dfa_intersect(const Dfa& a, const Dfa& b);
Dfa dfa_union(const Dfa& a, const Dfa& b);

// Language equality for automata over the same alphabet; on failure carries
// the shortest separating word, lexicographically least by alphabet order
// among the shortest.
struct DfaEquivResult {
  bool equal = false;
  std::optional<std::string> separator;
};
DfaEquivResult dfa_equiv(const Dfa& a, const Dfa& b);

// Alphabet-free layer beneath the public operations. The word-logic
// compiler runs on it directly because its intermediate automata use
// expanded letter sets larger than any character range.
struct IndexDfa {
  int letters = 0;
  int states = 0;
  int start = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<int>> delta;
};
struct IndexNfa {
  int letters = 0;
  int states = 0;
  std::vector<int> start;                            // ascending state set
  std::vector<bool> accepting;
  std::vector<std::vector<std::vector<int>>> delta;  // ascending target sets
};

// Subset construction; resulting states numbered in breadth-first discovery
// order, so the output is deterministic in the input.
IndexDfa determinize(const IndexNfa& n);
IndexDfa index_minimize(const IndexDfa& d);
IndexDfa index_complement(const IndexDfa& d);  // flips acceptance only
// Reachable product; acceptance combined by `both` (and) or inclusively (or).
IndexDfa index_intersect(const IndexDfa& a, const IndexDfa& b);
IndexDfa index_union(const IndexDfa& a, const IndexDfa& b);
// Shortest letter-index word accepted by exactly one automaton, or nothing.
std::optional<std::vector<int>> index_separator(const IndexDfa& a,
                                                const IndexDfa& b);

IndexDfa to_index(const Dfa& d);
Dfa from_index(const IndexDfa& d, const std::vector<char>& alphabet);

}  // namespace fopreserve
