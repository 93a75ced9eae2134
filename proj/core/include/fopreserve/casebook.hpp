#pragma once

#include <map>
#include <string>
#include <vector>

#include "fopreserve/report.hpp"

namespace fopreserve {

// Case parameters by name; every case fills in documented defaults for the
// keys it knows and rejects unknown keys with semantic_error.
using CaseParams = std::map<std::string, long long>;

// Catalog order; run_case accepts exactly these names.
std::vector<std::string> case_names();

// Runs one scripted case and returns its machine-checked facts. Every check
// is recomputed from logic-core and model-lab primitives; analytic notes
// carry the claims that need infinite models and are never computed.
//
//   example3                       maxSize in [1,10]      (default 5)
//     Existential-universal sentence over a reflexive linear-order edge
//     relation: every nonempty induced substructure stays a model, every
//     singleton is a minimal core, only the minimum is a witness.
//   monadic_optimality             k in [1,3], r in [1,4], r*2^k <= 12
//     Colour-count sentence of rank r over k unary predicates (default
//     k=1, r=2): the structure with r elements per colour satisfies the
//     (r*2^k - 1)-variable universal relativization but neither the
//     sentence nor the r*2^k-variable form, so the bound is tight.
//   finite_failure_chi             B in [0,2], n in [1,2] (default 0,1)
//     Order-with-successor sentence plus an exactly-B count of marked
//     elements: the complete structure falsifies it, deleting one
//     successor row satisfies it, the marked elements are a minimum-size
//     core, and every n-tuple extension of the marked witnesses matches
//     an isomorphic tuple on the edited structure.
//   undirected_paths               B in [2,4], maxNodes in [1,9]
//     On every disjoint union of undirected paths up to maxNodes nodes
//     (default B=2, maxNodes=8): the at-least-B-paths condition, the
//     degree census 2*deg0 + deg1 >= 2B, and its first-order encoding
//     agree; one endpoint per path is a core.
//   xi_not_psc                     B in [3,5]             (default 4)
//     The sentence "at least B isolated nodes or at least B+1 nodes of
//     degree at most one" on two single-edge paths plus B-3 isolated
//     nodes: satisfied, yet the exhaustive sweep finds no core smaller
//     than the whole structure, so the smallest core has size B+1 > B.
//   directed_paths_relativization  B in [1,3], n in [1,3], L in [2,31],
//                                  samples in [1,2000]; needs L >= B*n
//                                  and (B-1)*(2n+2) <= 2L
//     Directed path 0..2L with witnesses spaced 2n+2 apart (default
//     B=2, n=2, L=10, samples=200): every sampled witness-plus-n-tuple
//     induced piece splits into at least B components and satisfies the
//     low-degree sentence, while the full path has exactly two
//     low-degree points (its endpoints).
//   ea_bound                       k in [1,2]             (default 2)
//     Type-cycle sentence over k unary predicates: preservation sweep
//     and equivalence with the 2^k-variable universal relativization
//     pass up to size 5, and the one-element-per-type structure
//     separates the (2^k - 1)-variable form from the sentence.
//
// Throws semantic_error for unknown names, unknown keys, or inconsistent
// values, budget_error for values above the documented bounds.
CaseResult run_case(const std::string& name, const CaseParams& params = {});

}  // namespace fopreserve
