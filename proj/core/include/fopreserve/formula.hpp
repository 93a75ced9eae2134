#pragma once

#include <memory>
#include <string>
#include <vector>

namespace fopreserve {

enum class TermKind { Var, Const };

struct Term {
  TermKind kind;
  std::string name;
  bool operator==(const Term&) const = default;
};

Term var(std::string name);
Term cst(std::string name);

enum class FKind {
  Pred,
  Eq,
  SetMem,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Exists,
  Forall,
  ExistsSet,
  ForallSet
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable AST node. `name` holds the predicate symbol (Pred), the set
// variable (SetMem, ExistsSet, ForallSet) or the bound first-order variable
// (Exists, Forall). Free-variable lists are computed at construction and
// kept sorted and unique.
class Formula {
public:
  FKind kind;
  std::string name;
  std::vector<Term> terms;       // Pred args; Eq: {lhs, rhs}; SetMem: {arg}
  std::vector<FormulaPtr> kids;  // 1 for Not/quantifiers, 2 for connectives
  std::vector<std::string> freeVars;
  std::vector<std::string> freeSetVars;

  bool is_sentence() const { return freeVars.empty() && freeSetVars.empty(); }
};

FormulaPtr mk_pred(std::string name, std::vector<Term> args);
FormulaPtr mk_eq(Term a, Term b);
FormulaPtr mk_setmem(std::string setVar, Term t);
FormulaPtr mk_not(FormulaPtr a);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_exists(std::string v, FormulaPtr body);
FormulaPtr mk_forall(std::string v, FormulaPtr body);
FormulaPtr mk_exists_set(std::string sv, FormulaPtr body);
FormulaPtr mk_forall_set(std::string sv, FormulaPtr body);

// Left-associative folds; nullptr on empty input.
FormulaPtr mk_and_all(const std::vector<FormulaPtr>& fs);
FormulaPtr mk_or_all(const std::vector<FormulaPtr>& fs);

bool equal(const Formula& a, const Formula& b);
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return equal(*a, *b); }

bool has_set_nodes(const Formula& f);
bool has_quantifier_nodes(const Formula& f);
inline bool has_set_nodes(const FormulaPtr& f) { return has_set_nodes(*f); }
inline bool has_quantifier_nodes(const FormulaPtr& f) { return has_quantifier_nodes(*f); }

// Maximum quantifier nesting depth (first-order and set quantifiers alike).
int quantifier_rank(const Formula& f);
inline int quantifier_rank(const FormulaPtr& f) { return quantifier_rank(*f); }

// Every first-order variable name occurring anywhere (free or bound),
// sorted and unique. Used for freshness checks.
std::vector<std::string> all_var_names(const Formula& f);
inline std::vector<std::string> all_var_names(const FormulaPtr& f) {
  return all_var_names(*f);
}

// Replaces occurrences of `from` in atom arguments. When `from` is a
// variable, occurrences under a quantifier rebinding that name are left
// alone. The caller must ensure `to` cannot be captured (fresh variable or
// constant).
FormulaPtr subst_term(const FormulaPtr& f, const Term& from, const Term& to);

// Canonical minimal-parentheses rendering; parse_formula(print_formula(f))
// is structurally equal to f.
std::string print_formula(const Formula& f);
std::string print_formula(const FormulaPtr& f);

}  // namespace fopreserve
