#include "fopreserve/eval.hpp"

#include <vector>

#include "fopreserve/errors.hpp"

namespace fopreserve {

namespace {

constexpr std::uint64_t kAllElements = ~std::uint64_t(0);

struct Env {
  const Structure& M;
  bool mso;
  std::uint64_t mask;                                        // allowed elements
  std::vector<std::pair<std::string, int>> fo;               // innermost last
  std::vector<std::pair<std::string, std::uint64_t>> sets;   // innermost last

  bool allowed(int e) const {
    return mask == kAllElements || ((mask >> e) & 1);
  }
};

int resolve(const Term& t, const Env& env) {
  if (t.kind == TermKind::Const) {
    const int c = env.M.vocab.const_index(t.name);
    if (c < 0) throw semantic_error("unknown constant: " + t.name);
    return env.M.constantMap[c];
  }
  for (auto it = env.fo.rbegin(); it != env.fo.rend(); ++it)
    if (it->first == t.name) return it->second;
  throw semantic_error("unbound variable: " + t.name);
}

bool ev(const Formula& f, Env& env) {
  switch (f.kind) {
    case FKind::Pred: {
      const int p = env.M.vocab.pred_index(f.name);
      if (p < 0) throw semantic_error("unknown predicate: " + f.name);
      if (env.M.vocab.predicates[p].second != static_cast<int>(f.terms.size()))
        throw semantic_error("arity mismatch: " + f.name);
      std::vector<int> tuple(f.terms.size());
      for (std::size_t i = 0; i < f.terms.size(); ++i) tuple[i] = resolve(f.terms[i], env);
      return env.M.has(p, tuple);
    }
    case FKind::Eq:
      return resolve(f.terms[0], env) == resolve(f.terms[1], env);
    case FKind::SetMem: {
      if (!env.mso) throw semantic_error("set atom in first-order evaluation");
      const int e = resolve(f.terms[0], env);
      for (auto it = env.sets.rbegin(); it != env.sets.rend(); ++it)
        if (it->first == f.name) return (it->second >> e) & 1;
      throw semantic_error("unbound set variable: " + f.name);
    }
    case FKind::Not:
      return !ev(*f.kids[0], env);
    case FKind::And:
      return ev(*f.kids[0], env) && ev(*f.kids[1], env);
    case FKind::Or:
      return ev(*f.kids[0], env) || ev(*f.kids[1], env);
    case FKind::Implies:
      return !ev(*f.kids[0], env) || ev(*f.kids[1], env);
    case FKind::Iff:
      return ev(*f.kids[0], env) == ev(*f.kids[1], env);
    case FKind::Exists:
    case FKind::Forall: {
      const bool exists = f.kind == FKind::Exists;
      env.fo.emplace_back(f.name, 0);
      for (int e = 0; e < env.M.n; ++e) {
        if (!env.allowed(e)) continue;
        env.fo.back().second = e;
        if (ev(*f.kids[0], env) == exists) {
          env.fo.pop_back();
          return exists;
        }
      }
      env.fo.pop_back();
      return !exists;
    }
    case FKind::ExistsSet:
    case FKind::ForallSet: {
      if (!env.mso) throw semantic_error("set quantifier in first-order evaluation");
      if (env.M.n > 25) throw budget_error("universe too large for set quantification");
      const bool exists = f.kind == FKind::ExistsSet;
      const std::uint64_t full = env.mask == kAllElements
                                     ? (std::uint64_t(1) << env.M.n) - 1
                                     : env.mask;
      env.sets.emplace_back(f.name, 0);
      // Submask walk visits every subset of `full`, ending with the empty set.
      std::uint64_t s = full;
      for (;;) {
        env.sets.back().second = s;
        if (ev(*f.kids[0], env) == exists) {
          env.sets.pop_back();
          return exists;
        }
        if (s == 0) break;
        s = (s - 1) & full;
      }
      env.sets.pop_back();
      return !exists;
    }
  }
  throw semantic_error("unreachable formula kind");
}

bool run(const Structure& M, const Formula& f, const Assignment& sigma, bool mso,
         std::uint64_t mask) {
  validate_structure(M);
  Env env{M, mso, mask, {}, {}};
  if (mask != kAllElements) {
    if (M.n > 63) throw budget_error("universe too large for restricted evaluation");
    if ((mask >> M.n) != 0)
      throw semantic_error("restriction mask exceeds the universe");
    for (std::size_t c = 0; c < M.vocab.constants.size(); ++c)
      if (!env.allowed(M.constantMap[c]))
        throw semantic_error("constant outside the restriction mask: " +
                             M.vocab.constants[c]);
  }
  for (const auto& [name, value] : sigma.foVars) {
    if (value < 0 || value >= M.n) throw semantic_error("assignment out of range: " + name);
    if (!env.allowed(value))
      throw semantic_error("assignment outside the restriction mask: " + name);
    env.fo.emplace_back(name, value);
  }
  for (const auto& [name, maskValue] : sigma.setVars) {
    if (M.n < 64 && (maskValue >> M.n) != 0)
      throw semantic_error("set assignment out of range: " + name);
    if (mask != kAllElements && (maskValue & ~mask) != 0)
      throw semantic_error("set assignment outside the restriction mask: " + name);
    env.sets.emplace_back(name, maskValue);
  }
  return ev(f, env);
}

}  // namespace

bool eval_fo(const Structure& M, const Formula& f, const Assignment& sigma) {
  if (has_set_nodes(f)) throw semantic_error("set construct in first-order evaluation");
  return run(M, f, sigma, false, kAllElements);
}

bool eval_mso(const Structure& M, const Formula& f, const Assignment& sigma) {
  return run(M, f, sigma, true, kAllElements);
}

bool eval_fo_restricted(const Structure& M, const Formula& f, std::uint64_t allowed,
                        const Assignment& sigma) {
  if (has_set_nodes(f)) throw semantic_error("set construct in first-order evaluation");
  return run(M, f, sigma, false, allowed);
}

bool eval_mso_restricted(const Structure& M, const Formula& f, std::uint64_t allowed,
                         const Assignment& sigma) {
  return run(M, f, sigma, true, allowed);
}

}  // namespace fopreserve
