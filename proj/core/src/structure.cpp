#include "fopreserve/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "fopreserve/errors.hpp"

namespace fopreserve {

namespace {

constexpr std::uint64_t kRelationBitBudget = std::uint64_t(1) << 26;

bool identifier_shaped(const std::string& s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto tail = [&](char c) { return alpha(c) || (c >= '0' && c <= '9') || c == '_'; };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), tail);
}

bool is_keyword(const std::string& s) {
  return s == "forall" || s == "exists" || s == "Forall" || s == "Exists";
}

}  // namespace

int Vocabulary::pred_index(const std::string& name) const {
  for (std::size_t i = 0; i < predicates.size(); ++i)
    if (predicates[i].first == name) return static_cast<int>(i);
  return -1;
}

int Vocabulary::const_index(const std::string& name) const {
  for (std::size_t i = 0; i < constants.size(); ++i)
    if (constants[i] == name) return static_cast<int>(i);
  return -1;
}

bool Vocabulary::has_symbol(const std::string& name) const {
  return pred_index(name) >= 0 || const_index(name) >= 0;
}

bool Vocabulary::same_symbols(const Vocabulary& other) const {
  std::map<std::string, int> a, b;
  for (const auto& [n, ar] : predicates) a[n] = ar;
  for (const auto& [n, ar] : other.predicates) b[n] = ar;
  if (a != b) return false;
  std::set<std::string> ca(constants.begin(), constants.end());
  std::set<std::string> cb(other.constants.begin(), other.constants.end());
  return ca == cb;
}

void Vocabulary::validate() const {
  std::set<std::string> seen;
  for (const auto& [name, arity] : predicates) {
    if (!identifier_shaped(name)) throw semantic_error("bad predicate name: " + name);
    if (is_keyword(name)) throw semantic_error("reserved word used as predicate: " + name);
    if (arity < 1) throw semantic_error("predicate arity must be >= 1: " + name);
    if (!seen.insert(name).second) throw semantic_error("duplicate symbol: " + name);
  }
  for (const auto& name : constants) {
    if (!identifier_shaped(name)) throw semantic_error("bad constant name: " + name);
    if (is_keyword(name)) throw semantic_error("reserved word used as constant: " + name);
    if (!seen.insert(name).second) throw semantic_error("duplicate symbol: " + name);
  }
}

std::string print_vocab(const Vocabulary& v) {
  std::vector<std::string> entries;
  for (const auto& [name, arity] : v.predicates)
    entries.push_back(name + "/" + std::to_string(arity));
  for (const auto& name : v.constants) entries.push_back(name);
  if (entries.empty()) return "vocab { }";
  std::string out = "vocab { ";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += "; ";
    out += entries[i];
  }
  out += " }";
  return out;
}

std::uint64_t tuple_count(int n, int arity) {
  std::uint64_t c = 1;
  for (int i = 0; i < arity; ++i) {
    c *= static_cast<std::uint64_t>(n);
    if (c > kRelationBitBudget)
      throw budget_error("relation too large: " + std::to_string(n) + "^" +
                         std::to_string(arity));
  }
  return c;
}

std::uint64_t tuple_index(int n, const std::vector<int>& tuple) {
  std::uint64_t idx = 0;
  for (int component : tuple) idx = idx * static_cast<std::uint64_t>(n) + component;
  return idx;
}

std::vector<int> index_tuple(int n, int arity, std::uint64_t index) {
  std::vector<int> t(arity);
  for (int i = arity - 1; i >= 0; --i) {
    t[i] = static_cast<int>(index % n);
    index /= n;
  }
  return t;
}

bool Structure::has(int predIdx, const std::vector<int>& tuple) const {
  return relations[predIdx][tuple_index(n, tuple)];
}

void Structure::set(int predIdx, const std::vector<int>& tuple, bool value) {
  relations[predIdx][tuple_index(n, tuple)] = value;
}

Structure make_empty_structure(const Vocabulary& vocab, int n) {
  if (n < 1) throw semantic_error("universe must be nonempty");
  Structure M;
  M.vocab = vocab;
  M.n = n;
  for (const auto& [name, arity] : vocab.predicates)
    M.relations.emplace_back(tuple_count(n, arity), false);
  M.constantMap.assign(vocab.constants.size(), 0);
  return M;
}

void validate_structure(const Structure& M) {
  if (M.n < 1) throw semantic_error("universe must be nonempty");
  if (M.relations.size() != M.vocab.predicates.size())
    throw semantic_error("relation count does not match vocabulary");
  for (std::size_t i = 0; i < M.relations.size(); ++i)
    if (M.relations[i].size() != tuple_count(M.n, M.vocab.predicates[i].second))
      throw semantic_error("relation size mismatch: " + M.vocab.predicates[i].first);
  if (M.constantMap.size() != M.vocab.constants.size())
    throw semantic_error("constant count does not match vocabulary");
  for (int v : M.constantMap)
    if (v < 0 || v >= M.n) throw semantic_error("constant out of range");
}

int Induced::new_index_of(int originalElement) const {
  auto it = std::lower_bound(originalLabel.begin(), originalLabel.end(), originalElement);
  if (it == originalLabel.end() || *it != originalElement) return -1;
  return static_cast<int>(it - originalLabel.begin());
}

Induced induced(const Structure& M, const std::vector<int>& S) {
  std::set<int> keep(S.begin(), S.end());
  for (int e : S)
    if (e < 0 || e >= M.n) throw semantic_error("induced: element out of range");
  for (int c : M.constantMap) keep.insert(c);
  if (keep.empty()) throw semantic_error("induced: empty universe");

  Induced out;
  out.originalLabel.assign(keep.begin(), keep.end());
  const int m = static_cast<int>(out.originalLabel.size());

  out.structure = make_empty_structure(M.vocab, m);
  for (std::size_t p = 0; p < M.vocab.predicates.size(); ++p) {
    const int arity = M.vocab.predicates[p].second;
    const std::uint64_t count = tuple_count(m, arity);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::vector<int> t = index_tuple(m, arity, i);
      std::vector<int> orig(t.size());
      for (std::size_t j = 0; j < t.size(); ++j) orig[j] = out.originalLabel[t[j]];
      if (M.has(static_cast<int>(p), orig)) out.structure.relations[p][i] = true;
    }
  }
  for (std::size_t c = 0; c < M.constantMap.size(); ++c)
    out.structure.constantMap[c] = out.new_index_of(M.constantMap[c]);
  return out;
}

namespace {

// Per-element signature: for every (predicate, position), how many present
// tuples have this element at that position. Invariant under isomorphism.
std::vector<std::vector<std::uint64_t>> signatures(const Structure& M,
                                                   const std::vector<int>& predOrder) {
  std::vector<std::vector<std::uint64_t>> sig(M.n);
  for (auto& s : sig) s.clear();
  for (int p : predOrder) {
    const int arity = M.vocab.predicates[p].second;
    std::vector<std::vector<std::uint64_t>> counts(M.n,
                                                   std::vector<std::uint64_t>(arity, 0));
    const std::uint64_t count = tuple_count(M.n, arity);
    for (std::uint64_t i = 0; i < count; ++i) {
      if (!M.relations[p][i]) continue;
      std::vector<int> t = index_tuple(M.n, arity, i);
      for (int pos = 0; pos < arity; ++pos) ++counts[t[pos]][pos];
    }
    for (int e = 0; e < M.n; ++e)
      for (int pos = 0; pos < arity; ++pos) sig[e].push_back(counts[e][pos]);
  }
  return sig;
}

bool extend(const Structure& A, const Structure& B, const std::vector<int>& bPred,
            std::vector<int>& perm, std::vector<bool>& used, int next,
            const std::vector<std::vector<std::uint64_t>>& sigA,
            const std::vector<std::vector<std::uint64_t>>& sigB) {
  if (next == A.n) {
    for (std::size_t p = 0; p < A.vocab.predicates.size(); ++p) {
      const int arity = A.vocab.predicates[p].second;
      const std::uint64_t count = tuple_count(A.n, arity);
      for (std::uint64_t i = 0; i < count; ++i) {
        if (!A.relations[p][i]) continue;
        std::vector<int> t = index_tuple(A.n, arity, i);
        for (int& c : t) c = perm[c];
        if (!B.relations[bPred[p]][tuple_index(B.n, t)]) return false;
      }
    }
    return true;
  }
  if (perm[next] >= 0)  // pinned by a constant
    return extend(A, B, bPred, perm, used, next + 1, sigA, sigB);
  for (int cand = 0; cand < B.n; ++cand) {
    if (used[cand] || sigA[next] != sigB[cand]) continue;
    perm[next] = cand;
    used[cand] = true;
    if (extend(A, B, bPred, perm, used, next + 1, sigA, sigB)) return true;
    perm[next] = -1;
    used[cand] = false;
  }
  return false;
}

}  // namespace

bool isomorphic(const Structure& A, const Structure& B) {
  if (!A.vocab.same_symbols(B.vocab)) throw semantic_error("isomorphic: vocabulary mismatch");
  if (A.n != B.n) return false;

  // Align B's predicate/constant slots with A's declaration order.
  std::vector<int> bPred, aOrder;
  for (std::size_t p = 0; p < A.vocab.predicates.size(); ++p) {
    bPred.push_back(B.vocab.pred_index(A.vocab.predicates[p].first));
    aOrder.push_back(static_cast<int>(p));
  }
  for (std::size_t p = 0; p < A.vocab.predicates.size(); ++p) {
    std::uint64_t ca = std::count(A.relations[p].begin(), A.relations[p].end(), true);
    std::uint64_t cb = std::count(B.relations[bPred[p]].begin(), B.relations[bPred[p]].end(), true);
    if (ca != cb) return false;
  }

  std::vector<int> perm(A.n, -1);
  std::vector<bool> used(B.n, false);
  for (std::size_t c = 0; c < A.vocab.constants.size(); ++c) {
    const int bc = B.vocab.const_index(A.vocab.constants[c]);
    const int from = A.constantMap[c];
    const int to = B.constantMap[bc];
    if (perm[from] >= 0) {
      if (perm[from] != to) return false;
    } else {
      if (used[to]) return false;
      perm[from] = to;
      used[to] = true;
    }
  }

  auto sigA = signatures(A, aOrder);
  auto sigB = signatures(B, bPred);
  for (int e = 0; e < A.n; ++e)
    if (perm[e] >= 0 && sigA[e] != sigB[perm[e]]) return false;

  return extend(A, B, bPred, perm, used, 0, sigA, sigB);
}

std::string print_structure(const Structure& M) {
  std::string out = print_vocab(M.vocab);
  out += "\nstructure over " + std::to_string(M.n) + " {";
  std::string body;
  for (std::size_t p = 0; p < M.vocab.predicates.size(); ++p) {
    const int arity = M.vocab.predicates[p].second;
    const std::uint64_t count = tuple_count(M.n, arity);
    std::string tuples;
    for (std::uint64_t i = 0; i < count; ++i) {
      if (!M.relations[p][i]) continue;
      if (!tuples.empty()) tuples += ' ';
      std::vector<int> t = index_tuple(M.n, arity, i);
      if (arity == 1) {
        tuples += std::to_string(t[0]);
      } else {
        tuples += '(';
        for (int j = 0; j < arity; ++j) {
          if (j) tuples += ',';
          tuples += std::to_string(t[j]);
        }
        tuples += ')';
      }
    }
    if (!tuples.empty())
      body += " " + M.vocab.predicates[p].first + " = { " + tuples + " };";
  }
  for (std::size_t c = 0; c < M.vocab.constants.size(); ++c)
    body += " " + M.vocab.constants[c] + " = " + std::to_string(M.constantMap[c]) + ";";
  out += body;
  out += " }";
  return out;
}

}  // namespace fopreserve
