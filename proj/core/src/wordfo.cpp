#include "fopreserve/wordfo.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "fopreserve/enumerate.hpp"
#include "fopreserve/errors.hpp"
#include "fopreserve/eval.hpp"

namespace fopreserve {

Vocabulary word_vocab(const std::vector<char>& alphabet) {
  if (alphabet.empty()) throw semantic_error("automaton alphabet is empty");
  Vocabulary v;
  v.predicates.emplace_back("leq", 2);
  for (char c : alphabet) v.predicates.emplace_back(std::string("P") + c, 1);
  v.validate();
  return v;
}

Structure word_to_structure(const std::string& w, const std::vector<char>& alphabet) {
  if (w.empty()) throw semantic_error("the empty word has no structure");
  Structure M = make_empty_structure(word_vocab(alphabet), static_cast<int>(w.size()));
  for (int i = 0; i < M.n; ++i)
    for (int j = i; j < M.n; ++j) M.set(0, {i, j});
  for (int i = 0; i < M.n; ++i) {
    auto it = std::find(alphabet.begin(), alphabet.end(), w[i]);
    if (it == alphabet.end())
      throw semantic_error(std::string("word letter outside the alphabet: '") + w[i] + "'");
    M.set(1 + static_cast<int>(it - alphabet.begin()), {i});
  }
  return M;
}

std::vector<std::string> words_up_to(const std::vector<char>& alphabet, int maxLen,
                                     int minLen) {
  if (alphabet.empty()) throw semantic_error("automaton alphabet is empty");
  if (minLen < 0 || maxLen < minLen)
    throw semantic_error("word length range is empty");
  std::uint64_t total = 0;
  std::uint64_t pw = 1;
  for (int len = 0; len <= maxLen; ++len) {
    if (len >= minLen) {
      total += pw;
      if (total > enumeration_budget())
        throw budget_error("word sweep exceeds the enumeration budget");
    }
    if (__builtin_mul_overflow(pw, static_cast<std::uint64_t>(alphabet.size()), &pw))
      throw budget_error("word sweep exceeds the enumeration budget");
  }
  std::vector<std::string> out;
  out.reserve(total);
  for (int len = minLen; len <= maxLen; ++len) {
    std::string w(len, alphabet[0]);
    std::vector<int> digits(len, 0);
    while (true) {
      out.push_back(w);
      int pos = len - 1;
      while (pos >= 0 && digits[pos] == static_cast<int>(alphabet.size()) - 1) {
        digits[pos] = 0;
        w[pos] = alphabet[0];
        --pos;
      }
      if (pos < 0) break;
      ++digits[pos];
      w[pos] = alphabet[digits[pos]];
    }
  }
  return out;
}

namespace {

// Expanded letters: idx = b * 2^k + t where b is the base letter and track
// bit i of t marks the position of the i-th scope variable. The invariant
// maintained across the induction: on words whose live tracks each carry
// exactly one mark, an automaton accepts iff the formula holds under the
// marked positions; elsewhere the answer is unconstrained, and each
// quantifier step filters its own track with a singleton automaton before
// projecting.
struct WordCompiler {
  const std::vector<char>& alphabet;
  int base;

  static bool bit(int t, int i) { return (t >> i) & 1; }

  int track_of(const std::vector<std::string>& scope, const Term& term) const {
    if (term.kind != TermKind::Var)
      throw semantic_error("word sentences use no constants");
    for (int i = static_cast<int>(scope.size()) - 1; i >= 0; --i)
      if (scope[i] == term.name) return i;
    throw semantic_error("unbound variable: " + term.name);
  }

  IndexDfa atom_leq(int k, int px, int py) const {
    const int L = base << k;
    IndexDfa d;
    d.letters = L;
    d.states = 4;  // 0 scanning, 1 first mark seen, 2 accept sink, 3 reject sink
    d.start = 0;
    d.accepting = {false, false, true, false};
    d.delta.assign(4, std::vector<int>(L));
    for (int idx = 0; idx < L; ++idx) {
      const int t = idx & ((1 << k) - 1);
      const bool tx = bit(t, px);
      const bool ty = bit(t, py);
      d.delta[0][idx] = tx && ty ? 2 : tx ? 1 : ty ? 3 : 0;
      d.delta[1][idx] = ty ? 2 : 1;
      d.delta[2][idx] = 2;
      d.delta[3][idx] = 3;
    }
    return index_minimize(d);
  }

  IndexDfa atom_eq(int k, int px, int py) const {
    const int L = base << k;
    IndexDfa d;
    d.letters = L;
    d.states = 3;  // 0 scanning, 1 accept sink, 2 reject sink
    d.start = 0;
    d.accepting = {false, true, false};
    d.delta.assign(3, std::vector<int>(L));
    for (int idx = 0; idx < L; ++idx) {
      const int t = idx & ((1 << k) - 1);
      const bool tx = bit(t, px);
      const bool ty = bit(t, py);
      d.delta[0][idx] = px == py ? (tx ? 1 : 0) : (tx && ty ? 1 : (tx || ty) ? 2 : 0);
      d.delta[1][idx] = 1;
      d.delta[2][idx] = 2;
    }
    return index_minimize(d);
  }

  IndexDfa atom_letter(int k, int px, int letterIdx) const {
    const int L = base << k;
    IndexDfa d;
    d.letters = L;
    d.states = 3;  // 0 scanning, 1 accept sink, 2 reject sink
    d.start = 0;
    d.accepting = {false, true, false};
    d.delta.assign(3, std::vector<int>(L));
    for (int idx = 0; idx < L; ++idx) {
      const int t = idx & ((1 << k) - 1);
      d.delta[0][idx] = bit(t, px) ? ((idx >> k) == letterIdx ? 1 : 2) : 0;
      d.delta[1][idx] = 1;
      d.delta[2][idx] = 2;
    }
    return index_minimize(d);
  }

  // Exactly one mark on the given track; alphabet is base << kChild.
  IndexDfa singleton(int kChild, int bitPos) const {
    const int L = base << kChild;
    IndexDfa d;
    d.letters = L;
    d.states = 3;  // 0 no mark, 1 one mark, 2 dead
    d.start = 0;
    d.accepting = {false, true, false};
    d.delta.assign(3, std::vector<int>(L));
    for (int idx = 0; idx < L; ++idx) {
      const int t = idx & ((1 << kChild) - 1);
      const bool m = bit(t, bitPos);
      d.delta[0][idx] = m ? 1 : 0;
      d.delta[1][idx] = m ? 2 : 1;
      d.delta[2][idx] = 2;
    }
    return d;
  }

  // Removes track k: parent letter (b, t) expands to the child letters with
  // mark bit k clear and set.
  IndexDfa project_last(const IndexDfa& a, int k) const {
    IndexNfa n;
    n.letters = base << k;
    n.states = a.states;
    n.start = {a.start};
    n.accepting = a.accepting;
    n.delta.assign(a.states, std::vector<std::vector<int>>(n.letters));
    for (int s = 0; s < a.states; ++s)
      for (int idx = 0; idx < n.letters; ++idx) {
        const int b = idx >> k;
        const int t = idx & ((1 << k) - 1);
        const int clear = (b << (k + 1)) | t;
        const int set = clear | (1 << k);
        const int t0 = a.delta[s][clear];
        const int t1 = a.delta[s][set];
        if (t0 == t1)
          n.delta[s][idx] = {t0};
        else
          n.delta[s][idx] = {std::min(t0, t1), std::max(t0, t1)};
      }
    return index_minimize(determinize(n));
  }

  IndexDfa exists_step(const IndexDfa& body, int k) const {
    return project_last(index_minimize(index_intersect(body, singleton(k + 1, k))), k);
  }

  IndexDfa compile(const FormulaPtr& f, std::vector<std::string>& scope) const {
    const int k = static_cast<int>(scope.size());
    if (k > 16) throw budget_error("quantifier nesting too deep to compile");
    switch (f->kind) {
      case FKind::Pred: {
        if (f->name == "leq") {
          if (f->terms.size() != 2) throw semantic_error("leq takes two arguments");
          return atom_leq(k, track_of(scope, f->terms[0]),
                          track_of(scope, f->terms[1]));
        }
        for (int li = 0; li < base; ++li)
          if (f->name == std::string("P") + alphabet[li]) {
            if (f->terms.size() != 1)
              throw semantic_error("letter predicates take one argument");
            return atom_letter(k, track_of(scope, f->terms[0]), li);
          }
        throw semantic_error("predicate outside the word vocabulary: " + f->name);
      }
      case FKind::Eq:
        return atom_eq(k, track_of(scope, f->terms[0]), track_of(scope, f->terms[1]));
      case FKind::SetMem:
      case FKind::ExistsSet:
      case FKind::ForallSet:
        throw semantic_error("set quantifiers are out of scope for word compilation");
      case FKind::Not:
        return index_minimize(index_complement(compile(f->kids[0], scope)));
      case FKind::And:
        return index_minimize(
            index_intersect(compile(f->kids[0], scope), compile(f->kids[1], scope)));
      case FKind::Or:
        return index_minimize(
            index_union(compile(f->kids[0], scope), compile(f->kids[1], scope)));
      case FKind::Implies:
        return index_minimize(index_union(index_complement(compile(f->kids[0], scope)),
                                          compile(f->kids[1], scope)));
      case FKind::Iff: {
        IndexDfa a = compile(f->kids[0], scope);
        IndexDfa b = compile(f->kids[1], scope);
        IndexDfa fwd = index_minimize(index_union(index_complement(a), b));
        IndexDfa bwd = index_minimize(index_union(index_complement(b), a));
        return index_minimize(index_intersect(fwd, bwd));
      }
      case FKind::Exists: {
        scope.push_back(f->name);
        IndexDfa body = compile(f->kids[0], scope);
        scope.pop_back();
        return exists_step(body, k);
      }
      case FKind::Forall: {
        scope.push_back(f->name);
        IndexDfa body = index_complement(compile(f->kids[0], scope));
        scope.pop_back();
        return index_minimize(index_complement(exists_step(body, k)));
      }
    }
    throw semantic_error("unknown formula node");
  }
};

}  // namespace

Dfa compile_word_fo(const FormulaPtr& phi, const std::vector<char>& alphabet) {
  Vocabulary v = word_vocab(alphabet);
  if (!phi) throw semantic_error("null formula");
  if (!phi->is_sentence()) throw semantic_error("word compilation needs a sentence");
  if (has_set_nodes(phi))
    throw semantic_error("set quantifiers are out of scope for word compilation");
  WordCompiler wc{alphabet, static_cast<int>(alphabet.size())};
  std::vector<std::string> scope;
  IndexDfa result = wc.compile(phi, scope);
  IndexDfa nonempty;
  nonempty.letters = static_cast<int>(alphabet.size());
  nonempty.states = 2;
  nonempty.start = 0;
  nonempty.accepting = {false, true};
  nonempty.delta = {std::vector<int>(nonempty.letters, 1),
                    std::vector<int>(nonempty.letters, 1)};
  return from_index(index_minimize(index_intersect(result, nonempty)), alphabet);
}

Verdict verify_words_theorem(const FormulaPtr& phi, const Dfa& D, int B, int maxLen) {
  D.validate();
  if (B < 0) throw semantic_error("negative witness count");
  if (maxLen < 1) throw semantic_error("the word sweep needs maxLen >= 1");
  if (!phi || !phi->is_sentence())
    throw semantic_error("the words theorem applies to sentences");
  const bool mso = has_set_nodes(phi);
  auto holds = [&](const Structure& M) {
    return mso ? eval_mso(M, phi) : eval_fo(M, phi);
  };
  auto words = words_up_to(D.alphabet, maxLen, 1);
  std::vector<Structure> models;
  models.reserve(words.size());
  std::vector<char> lhs(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    models.push_back(word_to_structure(words[i], D.alphabet));
    lhs[i] = holds(models.back()) ? 1 : 0;
    if ((lhs[i] == 1) != dfa_run(D, words[i]).second)
      throw precondition_error("the automaton disagrees with the sentence on \"" +
                               words[i] + "\"");
  }
  const int N = (B + 1) * D.stateCount;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const bool rhs = psi_holds(models[i], phi, B, N);
    if ((lhs[i] == 1) != rhs) {
      Verdict out;
      out.status = VerdictStatus::Counterexample;
      out.boundChecked = maxLen;
      out.witness = CounterWitness{};
      out.witness->word = words[i];
      out.witness->lhs = lhs[i] == 1;
      out.witness->rhs = rhs;
      out.witness->note = "word splits the sentence from its relativized form";
      return out;
    }
  }
  Verdict out;
  out.status = VerdictStatus::PassUpTo;
  out.boundChecked = maxLen;
  return out;
}

}  // namespace fopreserve
