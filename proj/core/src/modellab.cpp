#include "fopreserve/modellab.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

#include "fopreserve/enumerate.hpp"
#include "fopreserve/errors.hpp"
#include "fopreserve/eval.hpp"
#include "fopreserve/relativize.hpp"

namespace fopreserve {

namespace {

std::uint64_t constant_bits(const Structure& M) {
  std::uint64_t bits = 0;
  for (const int c : M.constantMap) bits |= std::uint64_t(1) << c;
  return bits;
}

std::vector<int> mask_elements(std::uint64_t mask) {
  std::vector<int> out;
  for (int e = 0; mask >> e; ++e)
    if ((mask >> e) & 1) out.push_back(e);
  return out;
}

std::uint64_t elements_mask(const std::vector<int>& elements, int n) {
  std::uint64_t mask = 0;
  for (const int e : elements) {
    if (e < 0 || e >= n) throw semantic_error("element out of range: " + std::to_string(e));
    mask |= std::uint64_t(1) << e;
  }
  return mask;
}

// Subsets of {0..n-1} of exactly size k, lexicographic on the ascending
// element list. Stops and reports true as soon as fn does.
template <class F>
bool any_subset_of_size(int n, int k, F&& fn) {
  if (k == 0) return fn(std::uint64_t{0});
  if (k > n) return false;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    std::uint64_t mask = 0;
    for (const int e : idx) mask |= std::uint64_t(1) << e;
    if (fn(mask)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void require_fo_sentence(const Formula& f, const char* what) {
  if (has_set_nodes(f)) throw semantic_error(std::string(what) + " needs a first-order sentence");
  if (!f.is_sentence()) throw semantic_error(std::string(what) + " needs a sentence");
}

void require_model(const Structure& M, const FormulaPtr& phi) {
  if (!eval_fo(M, phi))
    throw precondition_error("structure is not a model of the sentence");
}

// Every superset of base (within the universe) induces a model of phi;
// the empty set does not name a structure and is skipped.
bool is_core_masked(const Structure& M, const FormulaPtr& phi, std::uint64_t coreMask) {
  const std::uint64_t base = coreMask | constant_bits(M);
  const std::uint64_t full = (std::uint64_t(1) << M.n) - 1;
  const std::uint64_t rest = full & ~base;
  std::uint64_t s = rest;
  for (;;) {
    const std::uint64_t mask = base | s;
    if (mask != 0 && !eval_fo_restricted(M, phi, mask)) return false;
    if (s == 0) break;
    s = (s - 1) & rest;
  }
  return true;
}

// All core masks in (size, lex) order.
std::vector<std::uint64_t> all_core_masks(const Structure& M, const FormulaPtr& phi) {
  std::vector<std::uint64_t> cores;
  for (int k = 0; k <= M.n; ++k) {
    any_subset_of_size(M.n, k, [&](std::uint64_t mask) {
      if (is_core_masked(M, phi, mask)) cores.push_back(mask);
      return false;
    });
  }
  return cores;
}

bool has_core_of_size(const Structure& M, const FormulaPtr& phi, int B) {
  for (int k = 0; k <= std::min(B, M.n); ++k) {
    if (any_subset_of_size(M.n, k,
                           [&](std::uint64_t mask) { return is_core_masked(M, phi, mask); }))
      return true;
  }
  return false;
}

Verdict pass_up_to(int bound) {
  return Verdict{VerdictStatus::PassUpTo, bound, std::nullopt};
}

// Memoized truth of phi on induced substructures, keyed by universe mask.
class MaskOracle {
 public:
  MaskOracle(const Structure& M, const FormulaPtr& phi)
      : M_(M), phi_(phi), mso_(has_set_nodes(*phi)) {}

  bool sat(std::uint64_t mask) {
    auto [it, fresh] = memo_.try_emplace(mask, 0);
    if (fresh) {
      const bool value = mso_ ? eval_mso_restricted(M_, phi_, mask)
                              : eval_fo_restricted(M_, phi_, mask);
      it->second = value ? 1 : 2;
    }
    return it->second == 1;
  }

 private:
  const Structure& M_;
  const FormulaPtr& phi_;
  bool mso_;
  std::unordered_map<std::uint64_t, char> memo_;
};

// Shared engine for psi_holds and the relativized-prefix witness listing:
// for a fixed existential part A, every nonempty T of at most n elements
// must keep A|T|constants a model of phi. n = 0 degenerates to A|constants.
bool forall_part_holds(const Structure& M, MaskOracle& oracle, std::uint64_t aBits,
                       std::uint64_t cBits, int n) {
  if (n == 0) return oracle.sat(aBits | cBits);
  for (int t = 1; t <= std::min(n, M.n); ++t) {
    const bool failed = any_subset_of_size(
        M.n, t, [&](std::uint64_t tBits) { return !oracle.sat(aBits | tBits | cBits); });
    if (failed) return false;
  }
  return true;
}

}  // namespace

bool is_core(const Structure& M, const std::vector<int>& C, const FormulaPtr& phi) {
  validate_structure(M);
  require_fo_sentence(*phi, "core check");
  const std::uint64_t coreMask = elements_mask(C, M.n);
  require_model(M, phi);
  return is_core_masked(M, phi, coreMask);
}

CoreReport minimal_cores(const Structure& M, const FormulaPtr& phi) {
  validate_structure(M);
  require_fo_sentence(*phi, "core search");
  require_model(M, phi);
  const auto cores = all_core_masks(M, phi);
  CoreReport report{M, phi, {}, 0, std::nullopt, std::nullopt, std::nullopt};
  for (const std::uint64_t c : cores) {
    bool minimal = true;
    for (const std::uint64_t d : cores) {
      if (d != c && (d & ~c) == 0) {
        minimal = false;
        break;
      }
    }
    if (minimal) report.minimalCores.push_back(mask_elements(c));
  }
  report.coreBound = static_cast<int>(report.minimalCores.front().size());
  return report;
}

Verdict ps_check(const Vocabulary& vocab, const FormulaPtr& phi, int maxSize) {
  require_fo_sentence(*phi, "preservation check");
  if (maxSize < 1) throw semantic_error("maxSize must be positive");
  for (int size = 1; size <= maxSize; ++size) {
    StructureEnumerator en(vocab, size);
    while (auto M = en.next()) {
      if (!eval_fo(*M, phi)) continue;
      const std::uint64_t cBits = constant_bits(*M);
      const int minK = std::popcount(cBits) == 0 ? 1 : std::popcount(cBits);
      for (int k = minK; k <= size; ++k) {
        std::uint64_t failing = 0;
        const bool found = any_subset_of_size(size, k, [&](std::uint64_t mask) {
          if ((mask & cBits) != cBits) return false;
          if (eval_fo_restricted(*M, phi, mask)) return false;
          failing = mask;
          return true;
        });
        if (found) {
          CounterWitness w;
          w.model = *M;
          w.subset = mask_elements(failing);
          w.note = "substructure fails the sentence";
          return Verdict{VerdictStatus::Counterexample, size, std::move(w)};
        }
      }
    }
  }
  return pass_up_to(maxSize);
}

Verdict psc_check(const Vocabulary& vocab, const FormulaPtr& phi, int B, int maxSize) {
  require_fo_sentence(*phi, "core-bound check");
  if (B < 0) throw semantic_error("core bound must be nonnegative");
  if (maxSize < 1) throw semantic_error("maxSize must be positive");
  for (int size = 1; size <= maxSize; ++size) {
    StructureEnumerator en(vocab, size);
    while (auto M = en.next()) {
      if (!eval_fo(*M, phi)) continue;
      if (has_core_of_size(*M, phi, B)) continue;
      CounterWitness w;
      w.model = *M;
      w.note = "no core of size at most " + std::to_string(B);
      return Verdict{VerdictStatus::Counterexample, size, std::move(w)};
    }
  }
  return pass_up_to(maxSize);
}

Verdict check_equiv_upto(const Vocabulary& vocab, const FormulaPtr& phi,
                         const FormulaPtr& psi, int maxSize) {
  if (!phi->is_sentence() || !psi->is_sentence())
    throw semantic_error("equivalence check needs sentences");
  if (maxSize < 1) throw semantic_error("maxSize must be positive");
  const bool phiMso = has_set_nodes(*phi);
  const bool psiMso = has_set_nodes(*psi);
  for (int size = 1; size <= maxSize; ++size) {
    StructureEnumerator en(vocab, size);
    while (auto M = en.next()) {
      const bool lhs = phiMso ? eval_mso(*M, phi) : eval_fo(*M, phi);
      const bool rhs = psiMso ? eval_mso(*M, psi) : eval_fo(*M, psi);
      if (lhs == rhs) continue;
      CounterWitness w;
      w.model = *M;
      w.lhs = lhs;
      w.rhs = rhs;
      w.note = "sentences disagree";
      return Verdict{VerdictStatus::Counterexample, size, std::move(w)};
    }
  }
  return pass_up_to(maxSize);
}

bool is_k_cover(const Structure& M, const std::vector<std::vector<int>>& members, int k) {
  validate_structure(M);
  if (k < 0) throw semantic_error("k must be nonnegative");
  std::vector<std::uint64_t> masks;
  std::uint64_t covered = 0;
  for (const auto& member : members) {
    masks.push_back(elements_mask(member, M.n));
    covered |= masks.back();
  }
  if (covered != (std::uint64_t(1) << M.n) - 1) return false;
  for (int t = 1; t <= std::min(k, M.n); ++t) {
    const bool uncovered = any_subset_of_size(M.n, t, [&](std::uint64_t tBits) {
      for (const std::uint64_t m : masks)
        if ((tBits & ~m) == 0) return false;
      return true;
    });
    if (uncovered) return false;
  }
  return true;
}

Verdict kcover_preservation_check(const Vocabulary& vocab, const FormulaPtr& phi,
                                  int k, int maxSize) {
  require_fo_sentence(*phi, "cover preservation check");
  if (k < 0) throw semantic_error("k must be nonnegative");
  if (maxSize < 1) throw semantic_error("maxSize must be positive");
  if (maxSize > 4) throw budget_error("cover search is capped at size 4");
  for (int size = 1; size <= maxSize; ++size) {
    StructureEnumerator en(vocab, size);
    while (auto M = en.next()) {
      if (eval_fo(*M, phi)) continue;
      const std::uint64_t cBits = constant_bits(*M);
      const std::uint64_t full = (std::uint64_t(1) << size) - 1;
      // Proper nonempty subsets containing the constants whose induced
      // substructure satisfies phi, in (size, lex) order.
      std::vector<std::uint64_t> candidates;
      for (int t = 1; t < size; ++t) {
        any_subset_of_size(size, t, [&](std::uint64_t mask) {
          if ((mask & cBits) == cBits && eval_fo_restricted(*M, phi, mask))
            candidates.push_back(mask);
          return false;
        });
      }
      // Depth-first search over antichains of candidates, members added in
      // candidate order; the first family forming a k-cover wins.
      std::vector<std::uint64_t> chosen;
      std::vector<std::uint64_t> best;
      auto valid = [&]() {
        std::uint64_t covered = 0;
        for (const std::uint64_t m : chosen) covered |= m;
        if (covered != full) return false;
        for (int t = 1; t <= std::min(k, size); ++t) {
          const bool uncovered = any_subset_of_size(size, t, [&](std::uint64_t tBits) {
            for (const std::uint64_t m : chosen)
              if ((tBits & ~m) == 0) return false;
            return true;
          });
          if (uncovered) return false;
        }
        return true;
      };
      auto dfs = [&](auto&& self, std::size_t start) -> bool {
        for (std::size_t i = start; i < candidates.size(); ++i) {
          bool comparable = false;
          for (const std::uint64_t m : chosen) {
            if ((m & ~candidates[i]) == 0 || (candidates[i] & ~m) == 0) {
              comparable = true;
              break;
            }
          }
          if (comparable) continue;
          chosen.push_back(candidates[i]);
          if (valid()) {
            best = chosen;
            return true;
          }
          if (self(self, i + 1)) return true;
          chosen.pop_back();
        }
        return false;
      };
      if (dfs(dfs, 0)) {
        CounterWitness w;
        w.model = *M;
        std::vector<std::vector<int>> cover;
        for (const std::uint64_t m : best) cover.push_back(mask_elements(m));
        w.cover = std::move(cover);
        w.note = "cover members satisfy the sentence but the model does not";
        return Verdict{VerdictStatus::Counterexample, size, std::move(w)};
      }
    }
  }
  return pass_up_to(maxSize);
}

Verdict delta_classify(const Vocabulary& vocab, const FormulaPtr& phi, int k, int l,
                       int maxSize) {
  require_fo_sentence(*phi, "classification");
  Verdict stage = psc_check(vocab, phi, k, maxSize);
  if (stage.status == VerdictStatus::Counterexample) {
    stage.witness->note = "the sentence has no core of size at most " + std::to_string(k);
    return stage;
  }
  stage = psc_check(vocab, mk_not(phi), l, maxSize);
  if (stage.status == VerdictStatus::Counterexample) {
    stage.witness->note = "the negation has no core of size at most " + std::to_string(l);
    return stage;
  }
  stage = check_psi_equiv(vocab, phi, k, l, maxSize);
  if (stage.status == VerdictStatus::Counterexample) {
    stage.witness->note = "the sentence differs from its relativized form";
    return stage;
  }
  return pass_up_to(maxSize);
}

bool psi_holds(const Structure& M, const FormulaPtr& phi, int B, int n) {
  validate_structure(M);
  if (!phi->is_sentence()) throw semantic_error("relativization needs a sentence");
  if (B < 0 || n < 0) throw semantic_error("quantifier counts must be nonnegative");
  const std::uint64_t cBits = constant_bits(M);
  if (B + n == 0 && cBits == 0)
    throw semantic_error("relativization needs at least one variable or constant");
  MaskOracle oracle(M, phi);
  if (B == 0) return forall_part_holds(M, oracle, 0, cBits, n);
  for (int a = 1; a <= std::min(B, M.n); ++a) {
    const bool found = any_subset_of_size(M.n, a, [&](std::uint64_t aBits) {
      return forall_part_holds(M, oracle, aBits, cBits, n);
    });
    if (found) return true;
  }
  return false;
}

Verdict check_psi_equiv(const Vocabulary& vocab, const FormulaPtr& phi, int B, int n,
                        int maxSize) {
  if (!phi->is_sentence()) throw semantic_error("equivalence check needs sentences");
  if (maxSize < 1) throw semantic_error("maxSize must be positive");
  const bool mso = has_set_nodes(*phi);
  FormulaPtr psiReal;
  for (int size = 1; size <= maxSize; ++size) {
    StructureEnumerator en(vocab, size);
    while (auto M = en.next()) {
      const bool lhs = mso ? eval_mso(*M, phi) : eval_fo(*M, phi);
      const bool rhs = psi_holds(*M, phi, B, n);
      if (lhs == rhs) continue;
      if (!psiReal) psiReal = build_psi(vocab, phi, B, n);
      const bool rhsReal = mso ? eval_mso(*M, psiReal) : eval_fo(*M, psiReal);
      if (rhsReal != rhs)
        throw semantic_error("internal: subset oracle disagrees with the materialized form");
      CounterWitness w;
      w.model = *M;
      w.lhs = lhs;
      w.rhs = rhs;
      w.note = "sentence differs from its relativized form";
      return Verdict{VerdictStatus::Counterexample, size, std::move(w)};
    }
  }
  return pass_up_to(maxSize);
}

CoreReport witness_core_report(const FormulaPtr& phi, int B, int n, const Structure& M) {
  validate_structure(M);
  require_fo_sentence(*phi, "witness report");
  if (B < 0 || n < 0) throw semantic_error("quantifier counts must be nonnegative");
  require_model(M, phi);
  if (!psi_holds(M, phi, B, n))
    throw precondition_error("structure is not a model of the relativized form");
  CoreReport report = minimal_cores(M, phi);

  // When phi itself is Exists^B Forall^* with quantifier-free matrix, its
  // own existential variables define the witnesses; otherwise the
  // relativized prefix does.
  std::vector<std::string> exVars;
  FormulaPtr rest = phi;
  while (rest->kind == FKind::Exists && static_cast<int>(exVars.size()) < B) {
    exVars.push_back(rest->name);
    rest = rest->kids[0];
  }
  bool ownPrefix = static_cast<int>(exVars.size()) == B;
  if (ownPrefix) {
    FormulaPtr body = rest;
    while (body->kind == FKind::Forall) body = body->kids[0];
    ownPrefix = !has_quantifier_nodes(*body);
  }

  const std::uint64_t cBits = constant_bits(M);
  MaskOracle oracle(M, phi);
  std::vector<std::vector<int>> witnesses;
  std::vector<int> tuple(B, 0);
  for (;;) {
    bool isWitness;
    if (ownPrefix) {
      Assignment sigma;
      for (std::size_t i = 0; i < exVars.size(); ++i) sigma.foVars[exVars[i]] = tuple[i];
      isWitness = eval_fo(M, rest, sigma);
    } else {
      std::uint64_t aBits = 0;
      for (const int e : tuple) aBits |= std::uint64_t(1) << e;
      isWitness = forall_part_holds(M, oracle, aBits, cBits, n);
    }
    if (isWitness) witnesses.push_back(tuple);
    int i = B - 1;
    while (i >= 0 && tuple[i] == M.n - 1) tuple[i--] = 0;
    if (i < 0) break;
    ++tuple[i];
  }

  bool setsAreCores = true;
  for (const auto& w : witnesses) {
    std::uint64_t bits = 0;
    for (const int e : w) bits |= std::uint64_t(1) << e;
    if (!is_core_masked(M, phi, bits)) {
      setsAreCores = false;
      break;
    }
  }

  std::set<std::vector<int>> witnessSet(witnesses.begin(), witnesses.end());
  bool coresYield = true;
  for (int k = 0; k <= std::min(B, M.n) && coresYield; ++k) {
    any_subset_of_size(M.n, k, [&](std::uint64_t coreMask) {
      if (!is_core_masked(M, phi, coreMask)) return false;
      const auto elems = mask_elements(coreMask);
      if (elems.empty()) {
        if (B == 0 && !witnessSet.count({})) coresYield = false;
        return !coresYield;
      }
      // Every map of the B positions onto the core.
      std::vector<std::size_t> pos(B, 0);
      for (;;) {
        std::uint64_t image = 0;
        std::vector<int> candidate(B);
        for (int i = 0; i < B; ++i) {
          candidate[i] = elems[pos[i]];
          image |= std::uint64_t(1) << candidate[i];
        }
        if (image == coreMask && !witnessSet.count(candidate)) {
          coresYield = false;
          return true;
        }
        int i = B - 1;
        while (i >= 0 && pos[i] == elems.size() - 1) pos[i--] = 0;
        if (i < 0) break;
        ++pos[i];
      }
      return !coresYield;
    });
  }

  report.witnesses = std::move(witnesses);
  report.witnessSetsAreCores = setsAreCores;
  report.coresYieldWitnesses = coresYield;
  return report;
}

}  // namespace fopreserve
