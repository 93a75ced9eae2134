#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fopreserve/structure.hpp"

namespace fopreserve {

// Raw-candidate cap for exhaustive sweeps. Defaults to 2^28; the environment
// variable FOPRESERVE_BUDGET (a positive decimal) overrides the default the
// first time the budget is read.
std::uint64_t enumeration_budget();
// Overrides the budget for the current process; 0 restores the default.
void set_enumeration_budget(std::uint64_t budget);

// Streams every structure over `vocab` with universe {0..size-1} in a fixed
// order: relation bitmaps ascend numerically (bit i is the i-th tuple in
// lexicographic order), earlier predicates are more significant, and the
// constant map varies fastest (earlier constants more significant). With
// upToIso only the least member of each isomorphism class is emitted.
// Construction throws budget_error when 2^(total relation bits) * size^
// (constant count) exceeds the budget.
class StructureEnumerator {
 public:
  StructureEnumerator(const Vocabulary& vocab, int size, bool upToIso = false);

  std::optional<Structure> next();
  std::uint64_t total_raw() const { return totalRaw_; }

 private:
  Structure materialize() const;
  void advance();

  Vocabulary vocab_;
  int size_;
  bool upToIso_;
  bool done_ = false;
  std::uint64_t totalRaw_ = 1;
  std::vector<std::uint64_t> tupleCounts_;  // per predicate
  std::vector<std::uint64_t> bitmaps_;      // per predicate
  std::vector<int> consts_;                 // per constant
};

// Collects the full stream of StructureEnumerator.
std::vector<Structure> enum_structures(const Vocabulary& vocab, int size,
                                       bool upToIso = false);

// True iff no permutation of the universe yields a smaller encoding in the
// enumeration order above.
bool is_least_in_iso_class(const Structure& M);

}  // namespace fopreserve
