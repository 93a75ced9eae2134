#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "fopreserve/formula.hpp"
#include "fopreserve/structure.hpp"

namespace fopreserve {

// Variable assignment; set variables are bitmasks over the universe.
struct Assignment {
  std::map<std::string, int> foVars;
  std::map<std::string, std::uint64_t> setVars;
};

// Standard Tarskian semantics. Rejects set quantifiers and set atoms.
bool eval_fo(const Structure& M, const Formula& f, const Assignment& sigma = {});
inline bool eval_fo(const Structure& M, const FormulaPtr& f, const Assignment& sigma = {}) {
  return eval_fo(M, *f, sigma);
}

// Set quantifiers range over all 2^n subsets; agrees with eval_fo on
// set-free formulas. Universe capped at 25 elements for set quantification.
bool eval_mso(const Structure& M, const Formula& f, const Assignment& sigma = {});
inline bool eval_mso(const Structure& M, const FormulaPtr& f, const Assignment& sigma = {}) {
  return eval_mso(M, *f, sigma);
}

// Quantifiers range only over the elements whose bit is set in `allowed`,
// so the result equals evaluating in the substructure induced by that set.
// Requires n <= 63, every constant inside the mask, and every assigned
// value (element or set) inside the mask.
bool eval_fo_restricted(const Structure& M, const Formula& f, std::uint64_t allowed,
                        const Assignment& sigma = {});
inline bool eval_fo_restricted(const Structure& M, const FormulaPtr& f, std::uint64_t allowed,
                               const Assignment& sigma = {}) {
  return eval_fo_restricted(M, *f, allowed, sigma);
}

// Restricted variant of eval_mso; set quantifiers range over subsets of the mask.
bool eval_mso_restricted(const Structure& M, const Formula& f, std::uint64_t allowed,
                         const Assignment& sigma = {});
inline bool eval_mso_restricted(const Structure& M, const FormulaPtr& f, std::uint64_t allowed,
                                const Assignment& sigma = {}) {
  return eval_mso_restricted(M, *f, allowed, sigma);
}

}  // namespace fopreserve
