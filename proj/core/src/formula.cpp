#include "fopreserve/formula.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "fopreserve/errors.hpp"

namespace fopreserve {

namespace {

std::vector<std::string> merge_sorted(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::string> without(std::vector<std::string> v, const std::string& name) {
  v.erase(std::remove(v.begin(), v.end(), name), v.end());
  return v;
}

std::vector<std::string> term_vars(const std::vector<Term>& terms) {
  std::vector<std::string> out;
  for (const Term& t : terms)
    if (t.kind == TermKind::Var) out.push_back(t.name);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FormulaPtr node(FKind kind, std::string name, std::vector<Term> terms,
                std::vector<FormulaPtr> kids) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->name = std::move(name);
  f->terms = std::move(terms);
  f->kids = std::move(kids);
  switch (f->kind) {
    case FKind::Pred:
    case FKind::Eq:
      f->freeVars = term_vars(f->terms);
      break;
    case FKind::SetMem:
      f->freeVars = term_vars(f->terms);
      f->freeSetVars = {f->name};
      break;
    case FKind::Not:
      f->freeVars = f->kids[0]->freeVars;
      f->freeSetVars = f->kids[0]->freeSetVars;
      break;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      f->freeVars = merge_sorted(f->kids[0]->freeVars, f->kids[1]->freeVars);
      f->freeSetVars = merge_sorted(f->kids[0]->freeSetVars, f->kids[1]->freeSetVars);
      break;
    case FKind::Exists:
    case FKind::Forall:
      f->freeVars = without(f->kids[0]->freeVars, f->name);
      f->freeSetVars = f->kids[0]->freeSetVars;
      break;
    case FKind::ExistsSet:
    case FKind::ForallSet:
      f->freeVars = f->kids[0]->freeVars;
      f->freeSetVars = without(f->kids[0]->freeSetVars, f->name);
      break;
  }
  return f;
}

void require(bool cond, const char* what) {
  if (!cond) throw semantic_error(what);
}

}  // namespace

Term var(std::string name) { return Term{TermKind::Var, std::move(name)}; }
Term cst(std::string name) { return Term{TermKind::Const, std::move(name)}; }

FormulaPtr mk_pred(std::string name, std::vector<Term> args) {
  require(!name.empty(), "predicate name empty");
  require(!args.empty(), "predicate atom needs at least one argument");
  return node(FKind::Pred, std::move(name), std::move(args), {});
}

FormulaPtr mk_eq(Term a, Term b) {
  return node(FKind::Eq, "", {std::move(a), std::move(b)}, {});
}

FormulaPtr mk_setmem(std::string setVar, Term t) {
  require(!setVar.empty(), "set variable name empty");
  return node(FKind::SetMem, std::move(setVar), {std::move(t)}, {});
}

FormulaPtr mk_not(FormulaPtr a) {
  require(a != nullptr, "null subformula");
  return node(FKind::Not, "", {}, {std::move(a)});
}

static FormulaPtr binary(FKind k, FormulaPtr a, FormulaPtr b) {
  require(a != nullptr && b != nullptr, "null subformula");
  return node(k, "", {}, {std::move(a), std::move(b)});
}

FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) { return binary(FKind::And, std::move(a), std::move(b)); }
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) { return binary(FKind::Or, std::move(a), std::move(b)); }
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) { return binary(FKind::Implies, std::move(a), std::move(b)); }
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b) { return binary(FKind::Iff, std::move(a), std::move(b)); }

static FormulaPtr quant(FKind k, std::string v, FormulaPtr body) {
  require(body != nullptr, "null subformula");
  require(!v.empty(), "quantified variable name empty");
  return node(k, std::move(v), {}, {std::move(body)});
}

FormulaPtr mk_exists(std::string v, FormulaPtr body) { return quant(FKind::Exists, std::move(v), std::move(body)); }
FormulaPtr mk_forall(std::string v, FormulaPtr body) { return quant(FKind::Forall, std::move(v), std::move(body)); }
FormulaPtr mk_exists_set(std::string sv, FormulaPtr body) { return quant(FKind::ExistsSet, std::move(sv), std::move(body)); }
FormulaPtr mk_forall_set(std::string sv, FormulaPtr body) { return quant(FKind::ForallSet, std::move(sv), std::move(body)); }

FormulaPtr mk_and_all(const std::vector<FormulaPtr>& fs) {
  FormulaPtr acc;
  for (const auto& f : fs) acc = acc ? mk_and(acc, f) : f;
  return acc;
}

FormulaPtr mk_or_all(const std::vector<FormulaPtr>& fs) {
  FormulaPtr acc;
  for (const auto& f : fs) acc = acc ? mk_or(acc, f) : f;
  return acc;
}

bool equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.name != b.name || a.terms != b.terms ||
      a.kids.size() != b.kids.size())
    return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

bool has_set_nodes(const Formula& f) {
  if (f.kind == FKind::SetMem || f.kind == FKind::ExistsSet || f.kind == FKind::ForallSet)
    return true;
  for (const auto& k : f.kids)
    if (has_set_nodes(*k)) return true;
  return false;
}

bool has_quantifier_nodes(const Formula& f) {
  if (f.kind == FKind::Exists || f.kind == FKind::Forall ||
      f.kind == FKind::ExistsSet || f.kind == FKind::ForallSet)
    return true;
  for (const auto& k : f.kids)
    if (has_quantifier_nodes(*k)) return true;
  return false;
}

int quantifier_rank(const Formula& f) {
  int best = 0;
  for (const auto& k : f.kids) best = std::max(best, quantifier_rank(*k));
  switch (f.kind) {
    case FKind::Exists:
    case FKind::Forall:
    case FKind::ExistsSet:
    case FKind::ForallSet:
      return best + 1;
    default:
      return best;
  }
}

static void collect_var_names(const Formula& f, std::set<std::string>& out) {
  if (f.kind == FKind::Exists || f.kind == FKind::Forall) out.insert(f.name);
  for (const Term& t : f.terms)
    if (t.kind == TermKind::Var) out.insert(t.name);
  for (const auto& k : f.kids) collect_var_names(*k, out);
}

std::vector<std::string> all_var_names(const Formula& f) {
  std::set<std::string> s;
  collect_var_names(f, s);
  return {s.begin(), s.end()};
}

FormulaPtr subst_term(const FormulaPtr& f, const Term& from, const Term& to) {
  if (from == to) return f;
  switch (f->kind) {
    case FKind::Pred:
    case FKind::Eq:
    case FKind::SetMem: {
      bool hit = false;
      std::vector<Term> terms = f->terms;
      for (Term& t : terms)
        if (t == from) {
          t = to;
          hit = true;
        }
      if (!hit) return f;
      return node(f->kind, f->name, std::move(terms), {});
    }
    case FKind::Exists:
    case FKind::Forall:
      if (from.kind == TermKind::Var && f->name == from.name) return f;
      break;
    default:
      break;
  }
  std::vector<FormulaPtr> kids;
  kids.reserve(f->kids.size());
  bool hit = false;
  for (const auto& k : f->kids) {
    kids.push_back(subst_term(k, from, to));
    hit = hit || kids.back() != k;
  }
  if (!hit) return f;
  return node(f->kind, f->name, f->terms, std::move(kids));
}

namespace {

// Printer precedence: quantifiers bind weakest (body extends maximally
// right), then <-> , -> , | , & , ~ , atoms.
int prec(FKind k) {
  switch (k) {
    case FKind::Exists:
    case FKind::Forall:
    case FKind::ExistsSet:
    case FKind::ForallSet:
      return 0;
    case FKind::Iff:
      return 1;
    case FKind::Implies:
      return 2;
    case FKind::Or:
      return 3;
    case FKind::And:
      return 4;
    case FKind::Not:
      return 5;
    default:
      return 6;
  }
}

void pr(const Formula& f, int minPrec, std::string& out) {
  const bool wrap = prec(f.kind) < minPrec;
  if (wrap) out += '(';
  switch (f.kind) {
    case FKind::Pred:
    case FKind::SetMem:
      out += f.name;
      out += '(';
      for (std::size_t i = 0; i < f.terms.size(); ++i) {
        if (i) out += ',';
        out += f.terms[i].name;
      }
      out += ')';
      break;
    case FKind::Eq:
      out += f.terms[0].name;
      out += " = ";
      out += f.terms[1].name;
      break;
    case FKind::Not:
      out += '~';
      if (f.kids[0]->kind == FKind::Eq) {  // ~(x = y), never ~x = y
        out += '(';
        pr(*f.kids[0], 0, out);
        out += ')';
      } else {
        pr(*f.kids[0], 5, out);
      }
      break;
    case FKind::And:
      pr(*f.kids[0], 4, out);
      out += " & ";
      pr(*f.kids[1], 5, out);
      break;
    case FKind::Or:
      pr(*f.kids[0], 3, out);
      out += " | ";
      pr(*f.kids[1], 4, out);
      break;
    case FKind::Implies:
      pr(*f.kids[0], 3, out);
      out += " -> ";
      pr(*f.kids[1], 2, out);
      break;
    case FKind::Iff:
      pr(*f.kids[0], 1, out);
      out += " <-> ";
      pr(*f.kids[1], 2, out);
      break;
    case FKind::Exists:
    case FKind::Forall:
    case FKind::ExistsSet:
    case FKind::ForallSet:
      out += (f.kind == FKind::Exists)      ? "exists "
             : (f.kind == FKind::Forall)    ? "forall "
             : (f.kind == FKind::ExistsSet) ? "Exists "
                                            : "Forall ";
      out += f.name;
      out += ". ";
      pr(*f.kids[0], 0, out);
      break;
  }
  if (wrap) out += ')';
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  pr(f, 0, out);
  return out;
}

std::string print_formula(const FormulaPtr& f) { return print_formula(*f); }

}  // namespace fopreserve
