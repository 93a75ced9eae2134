#include "fopreserve/relativize.hpp"

#include <algorithm>
#include <cstdint>

#include "fopreserve/errors.hpp"

namespace fopreserve {

namespace {

bool lowercase_identifier(const std::string& s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  auto ok = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  };
  return std::all_of(s.begin(), s.end(), ok);
}

std::vector<Term> relativization_terms(const Vocabulary& vocab, const FormulaPtr& phi,
                                       const std::vector<std::string>& vars) {
  if (!phi->is_sentence()) throw semantic_error("relativization requires a sentence");
  const auto used = all_var_names(phi);
  std::vector<Term> terms;
  for (const auto& v : vars) {
    if (!lowercase_identifier(v))
      throw semantic_error("relativization variable must be a lowercase identifier: " + v);
    if (vocab.has_symbol(v))
      throw semantic_error("relativization variable shadows a vocabulary symbol: " + v);
    if (std::binary_search(used.begin(), used.end(), v))
      throw semantic_error("relativization variable occurs in the sentence: " + v);
    for (const auto& w : vars)
      if (&w != &v && w == v)
        throw semantic_error("duplicate relativization variable: " + v);
    terms.push_back(var(v));
  }
  for (const auto& c : vocab.constants) terms.push_back(cst(c));
  if (terms.empty())
    throw semantic_error("relativization needs a variable or a constant");
  return terms;
}

// Replaces free atoms X(t) of one set variable by "t = t" (member) or
// "~(t = t)" (non-member), per the bitmask over `terms`. Recursion stops at
// a quantifier rebinding the same set variable.
FormulaPtr subst_set_atoms(const FormulaPtr& f, const std::string& setVar,
                           const std::vector<Term>& terms, std::uint64_t members) {
  switch (f->kind) {
    case FKind::SetMem: {
      if (f->name != setVar) return f;
      const Term& t = f->terms[0];
      bool in = false;
      for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i] == t) {
          in = (members >> i) & 1;
          break;
        }
      FormulaPtr eq = mk_eq(t, t);
      return in ? eq : mk_not(eq);
    }
    case FKind::ExistsSet:
    case FKind::ForallSet:
      if (f->name == setVar) return f;
      break;
    case FKind::Pred:
    case FKind::Eq:
      return f;
    default:
      break;
  }
  std::vector<FormulaPtr> kids;
  kids.reserve(f->kids.size());
  bool hit = false;
  for (const auto& k : f->kids) {
    kids.push_back(subst_set_atoms(k, setVar, terms, members));
    hit = hit || kids.back() != k;
  }
  if (!hit) return f;
  switch (f->kind) {
    case FKind::Not: return mk_not(kids[0]);
    case FKind::And: return mk_and(kids[0], kids[1]);
    case FKind::Or: return mk_or(kids[0], kids[1]);
    case FKind::Implies: return mk_implies(kids[0], kids[1]);
    case FKind::Iff: return mk_iff(kids[0], kids[1]);
    case FKind::Exists: return mk_exists(f->name, kids[0]);
    case FKind::Forall: return mk_forall(f->name, kids[0]);
    case FKind::ExistsSet: return mk_exists_set(f->name, kids[0]);
    case FKind::ForallSet: return mk_forall_set(f->name, kids[0]);
    default: throw semantic_error("unexpected node in set substitution");
  }
}

// Guard asserting the member set is closed under equal values: no member
// term may equal a non-member term. Null when one side is empty.
FormulaPtr membership_guard(const std::vector<Term>& terms, std::uint64_t members) {
  std::vector<FormulaPtr> cs;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!((members >> i) & 1)) continue;
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if ((members >> j) & 1) continue;
      cs.push_back(mk_not(mk_eq(terms[i], terms[j])));
    }
  }
  return mk_and_all(cs);
}

class Rewriter {
public:
  Rewriter(std::vector<Term> terms, bool allowSets)
      : terms_(std::move(terms)), allowSets_(allowSets) {}

  FormulaPtr run(const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::Pred:
      case FKind::Eq:
        return f;
      case FKind::SetMem:
        if (!allowSets_) throw semantic_error("set atom in first-order relativization");
        return f;
      case FKind::Not:
        return mk_not(run(f->kids[0]));
      case FKind::And:
        return mk_and(run(f->kids[0]), run(f->kids[1]));
      case FKind::Or:
        return mk_or(run(f->kids[0]), run(f->kids[1]));
      case FKind::Implies:
        return mk_implies(run(f->kids[0]), run(f->kids[1]));
      case FKind::Iff:
        return mk_iff(run(f->kids[0]), run(f->kids[1]));
      case FKind::Exists: {
        std::vector<FormulaPtr> ds;
        ds.reserve(terms_.size());
        for (const Term& z : terms_)
          ds.push_back(run(subst_term(f->kids[0], var(f->name), z)));
        return mk_or_all(ds);
      }
      case FKind::Forall: {
        std::vector<FormulaPtr> ds;
        ds.reserve(terms_.size());
        for (const Term& z : terms_)
          ds.push_back(run(mk_not(subst_term(f->kids[0], var(f->name), z))));
        return mk_not(mk_or_all(ds));
      }
      case FKind::ExistsSet: {
        if (!allowSets_)
          throw semantic_error("set quantifier in first-order relativization");
        const FormulaPtr body = run(f->kids[0]);
        std::vector<FormulaPtr> ds;
        const std::uint64_t total = std::uint64_t(1) << terms_.size();
        for (std::uint64_t mask = 0; mask < total; ++mask) {
          FormulaPtr d = subst_set_atoms(body, f->name, terms_, mask);
          if (FormulaPtr guard = membership_guard(terms_, mask))
            d = mk_and(guard, d);
          ds.push_back(d);
        }
        return mk_or_all(ds);
      }
      case FKind::ForallSet: {
        if (!allowSets_)
          throw semantic_error("set quantifier in first-order relativization");
        FormulaPtr ex = mk_exists_set(f->name, mk_not(f->kids[0]));
        return mk_not(run(ex));
      }
    }
    throw semantic_error("unexpected formula node");
  }

private:
  std::vector<Term> terms_;
  bool allowSets_;
};

}  // namespace

RelativizedFormula relativize_fo(const Vocabulary& vocab, const FormulaPtr& phi,
                                 const std::vector<std::string>& vars) {
  if (has_set_nodes(phi))
    throw semantic_error("set nodes in first-order relativization");
  auto terms = relativization_terms(vocab, phi, vars);
  if (terms.size() > 20) throw budget_error("too many relativization terms");
  Rewriter rw(std::move(terms), false);
  return RelativizedFormula{phi, vars, rw.run(phi)};
}

RelativizedFormula relativize_mso(const Vocabulary& vocab, const FormulaPtr& phi,
                                  const std::vector<std::string>& vars) {
  auto terms = relativization_terms(vocab, phi, vars);
  if (terms.size() > 20) throw budget_error("too many relativization terms");
  Rewriter rw(std::move(terms), true);
  return RelativizedFormula{phi, vars, rw.run(phi)};
}

FormulaPtr build_psi(const Vocabulary& vocab, const FormulaPtr& phi, int B, int n) {
  if (B < 0 || n < 0) throw semantic_error("negative quantifier count");
  std::vector<std::string> vars;
  for (int i = 1; i <= B; ++i) vars.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) vars.push_back("y" + std::to_string(i));
  RelativizedFormula rel = has_set_nodes(phi) ? relativize_mso(vocab, phi, vars)
                                              : relativize_fo(vocab, phi, vars);
  FormulaPtr f = rel.result;
  for (int i = n; i >= 1; --i) f = mk_forall("y" + std::to_string(i), f);
  for (int i = B; i >= 1; --i) f = mk_exists("x" + std::to_string(i), f);
  return f;
}

Diagram diagram(const Structure& M) {
  validate_structure(M);
  std::string prefix = "e";
  for (;;) {
    bool clash = false;
    for (int i = 0; i < M.n && !clash; ++i)
      clash = M.vocab.has_symbol(prefix + std::to_string(i));
    if (!clash) break;
    prefix += prefix;
  }
  std::vector<Term> label;
  Vocabulary expanded = M.vocab;
  for (int i = 0; i < M.n; ++i) {
    label.push_back(cst(prefix + std::to_string(i)));
    expanded.constants.push_back(label.back().name);
  }
  expanded.validate();

  std::vector<FormulaPtr> cs;
  for (std::size_t p = 0; p < M.vocab.predicates.size(); ++p) {
    const int arity = M.vocab.predicates[p].second;
    const std::uint64_t count = tuple_count(M.n, arity);
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::vector<int> t = index_tuple(M.n, arity, i);
      std::vector<Term> args;
      for (int c : t) args.push_back(label[c]);
      FormulaPtr atom = mk_pred(M.vocab.predicates[p].first, std::move(args));
      cs.push_back(M.relations[p][i] ? atom : mk_not(atom));
    }
  }
  for (int i = 0; i < M.n; ++i)
    for (int j = i + 1; j < M.n; ++j)
      cs.push_back(mk_not(mk_eq(label[i], label[j])));
  for (std::size_t c = 0; c < M.vocab.constants.size(); ++c)
    cs.push_back(mk_eq(cst(M.vocab.constants[c]), label[M.constantMap[c]]));

  FormulaPtr delta = mk_and_all(cs);
  if (!delta) delta = mk_eq(label[0], label[0]);
  return Diagram{std::move(expanded), std::move(delta)};
}

FormulaPtr pi1_from_forbidden(const Vocabulary& vocab,
                              const std::vector<Structure>& forbidden) {
  if (!vocab.constants.empty())
    throw semantic_error("forbidden-substructure sentences need a constant-free vocabulary");
  std::vector<FormulaPtr> cs;
  for (const Structure& M : forbidden) {
    if (!M.vocab.same_symbols(vocab))
      throw semantic_error("forbidden structure over a different vocabulary");
    Diagram d = diagram(M);
    FormulaPtr body = d.delta;
    const std::size_t fresh = d.vocab.constants.size() - vocab.constants.size();
    for (std::size_t i = 0; i < fresh; ++i)
      body = subst_term(body, cst(d.vocab.constants[vocab.constants.size() + i]),
                        var("x" + std::to_string(i + 1)));
    body = mk_not(body);
    for (std::size_t i = fresh; i >= 1; --i)
      body = mk_forall("x" + std::to_string(i), body);
    cs.push_back(body);
  }
  if (cs.empty()) return mk_forall("x1", mk_eq(var("x1"), var("x1")));
  return mk_and_all(cs);
}

FormulaPtr type_cycle_sentence(const std::vector<std::string>& unaryPreds) {
  if (unaryPreds.empty()) throw semantic_error("type cycle needs at least one predicate");
  if (unaryPreds.size() > 16) throw budget_error("too many predicates for a type cycle");
  const std::uint64_t types = std::uint64_t(1) << unaryPreds.size();
  auto sigma = [&](std::uint64_t i, const std::string& v) {
    std::vector<FormulaPtr> lits;
    for (std::size_t j = 0; j < unaryPreds.size(); ++j) {
      FormulaPtr atom = mk_pred(unaryPreds[j], {var(v)});
      lits.push_back(((i >> j) & 1) ? atom : mk_not(atom));
    }
    return mk_and_all(lits);
  };
  std::vector<FormulaPtr> cs;
  for (std::uint64_t i = 0; i < types; ++i)
    cs.push_back(mk_implies(sigma(i, "x"), mk_not(sigma((i + 1) % types, "y"))));
  return mk_exists("x", mk_forall("y", mk_and_all(cs)));
}

}  // namespace fopreserve
