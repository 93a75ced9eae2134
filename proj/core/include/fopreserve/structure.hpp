#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fopreserve/vocabulary.hpp"

namespace fopreserve {

// Finite relational structure with universe {0..n-1}. Relations are bit
// vectors over lexicographically ordered tuples (first component most
// significant), parallel to vocab.predicates; constantMap is parallel to
// vocab.constants.
struct Structure {
  Vocabulary vocab;
  int n = 0;
  std::vector<std::vector<bool>> relations;
  std::vector<int> constantMap;

  bool has(int predIdx, const std::vector<int>& tuple) const;
  void set(int predIdx, const std::vector<int>& tuple, bool value = true);
};

std::uint64_t tuple_count(int n, int arity);
std::uint64_t tuple_index(int n, const std::vector<int>& tuple);
std::vector<int> index_tuple(int n, int arity, std::uint64_t index);

// Empty relations, constants all 0. Throws budget_error if any relation
// would exceed the per-relation bit budget, semantic_error on n < 1.
Structure make_empty_structure(const Vocabulary& vocab, int n);

// Throws semantic_error on any invariant violation (sizes, ranges).
void validate_structure(const Structure& M);

struct Induced {
  Structure structure;
  std::vector<int> originalLabel;  // new index -> original element
  int new_index_of(int originalElement) const;  // -1 if absent
};

// Substructure induced by S together with all constant interpretations;
// elements renumbered 0..|S'|-1 preserving original order. Throws
// semantic_error if S has out-of-range elements or S and the constant set
// are both empty.
Induced induced(const Structure& M, const std::vector<int>& S);

// True iff a bijection preserving all relations (both directions) and all
// constants exists. Throws semantic_error on vocabulary mismatch.
bool isomorphic(const Structure& M, const Structure& N);

// Two lines: the vocab block and the structure block. Empty relations are
// omitted; tuples print in lexicographic order; arity-1 tuples print bare.
std::string print_structure(const Structure& M);

}  // namespace fopreserve
