#include "fopreserve/subword.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fopreserve/enumerate.hpp"
#include "fopreserve/errors.hpp"
#include "fopreserve/relativize.hpp"
#include "fopreserve/wordfo.hpp"

namespace fopreserve {

namespace {

// st[i] = state after reading w[0..i), so st.front() is the start state and
// st.back() the end state.
std::vector<int> state_trail(const Dfa& D, const std::string& w) {
  std::vector<int> st(w.size() + 1);
  st[0] = D.start;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int li = D.letter_index(w[i]);
    if (li < 0)
      throw semantic_error(std::string("letter '") + w[i] +
                           "' is not in the automaton's alphabet");
    st[i + 1] = D.delta[st[i]][li];
  }
  return st;
}

// Greedy excision over positions [i, s]: the cursor keeps the last position
// sharing its state and jumps past it, so each kept letter advances the run
// exactly as the skipped block did. With stopAtExit the loop also ends as
// soon as the cursor already sits in the segment's exit state st[s+1].
void compress_segment(const std::vector<int>& st, int i, int s,
                      bool stopAtExit, std::vector<int>& T) {
  if (i > s) return;
  const int exitState = st[s + 1];
  while (i <= s) {
    if (stopAtExit && st[i] == exitState) return;
    if (i == s) {
      T.push_back(i);
      return;
    }
    int k = i;
    for (int j = i + 1; j <= s; ++j)
      if (st[j] == st[i]) k = j;
    T.push_back(k);
    i = k + 1;
  }
}

}  // namespace

ExtractionTrace extract_subword(const Dfa& D, const std::string& w,
                                const std::vector<int>& A) {
  D.validate();
  const int len = static_cast<int>(w.size());
  for (std::size_t j = 0; j < A.size(); ++j) {
    if (A[j] < 0 || A[j] >= len)
      throw semantic_error("marked position out of range");
    if (j > 0 && A[j] <= A[j - 1])
      throw semantic_error("marked positions must be strictly ascending");
  }
  const std::vector<int> st = state_trail(D, w);

  ExtractionTrace t;
  t.inputWord = w;
  t.positionsA = A;
  const int m = static_cast<int>(A.size());
  for (int j = 0; j <= m; ++j) {
    const int p = j == 0 ? 0 : A[j - 1];
    const int s = (j == m ? len : A[j]) - 1;
    std::vector<int> T;
    if (j == 0) {
      compress_segment(st, p, s, /*stopAtExit=*/false, T);
    } else {
      T.push_back(p);
      compress_segment(st, p + 1, s, /*stopAtExit=*/true, T);
    }
    t.segments.push_back(std::move(T));
  }
  for (const auto& T : t.segments)
    for (int pos : T) {
      t.outputPositions.emplace_back(pos, static_cast<int>(t.output.size()));
      t.output.push_back(w[pos]);
    }
  return t;
}

Dfa subword_closure(const Dfa& D) {
  D.validate();
  const IndexDfa d = to_index(dfa_minimize(D));
  std::vector<std::vector<int>> reach(d.states);
  for (int q = 0; q < d.states; ++q) {
    std::vector<bool> seen(d.states, false);
    std::vector<int> stack{q};
    seen[q] = true;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int c = 0; c < d.letters; ++c) {
        const int y = d.delta[x][c];
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    for (int y = 0; y < d.states; ++y)
      if (seen[y]) reach[q].push_back(y);
  }

  IndexNfa n;
  n.letters = d.letters;
  n.states = d.states;
  n.start = {d.start};
  n.accepting.assign(d.states, false);
  n.delta.assign(d.states,
                 std::vector<std::vector<int>>(d.letters));
  for (int q = 0; q < d.states; ++q) {
    for (int y : reach[q])
      if (d.accepting[y]) n.accepting[q] = true;
    for (int c = 0; c < d.letters; ++c) {
      std::vector<int>& tgt = n.delta[q][c];
      for (int y : reach[q]) tgt.push_back(d.delta[y][c]);
      std::sort(tgt.begin(), tgt.end());
      tgt.erase(std::unique(tgt.begin(), tgt.end()), tgt.end());
    }
  }
  return from_index(index_minimize(determinize(n)), D.alphabet);
}

bool is_subword_closed(const Dfa& D) {
  return dfa_equiv(D, subword_closure(D)).equal;
}

Dfa superword_closure(const std::vector<std::string>& basis,
                      const std::vector<char>& alphabet) {
  const int letters = static_cast<int>(alphabet.size());
  IndexDfa acc;
  acc.letters = letters;
  acc.states = 1;
  acc.start = 0;
  acc.accepting = {false};
  acc.delta = {std::vector<int>(letters, 0)};
  for (const std::string& u : basis) {
    for (char c : u)
      if (std::find(alphabet.begin(), alphabet.end(), c) == alphabet.end())
        throw semantic_error(std::string("basis letter '") + c +
                             "' is not in the alphabet");
    IndexDfa match;
    match.letters = letters;
    match.states = static_cast<int>(u.size()) + 1;
    match.start = 0;
    match.accepting.assign(match.states, false);
    match.accepting[u.size()] = true;
    match.delta.assign(match.states, std::vector<int>(letters));
    for (int q = 0; q < match.states; ++q)
      for (int c = 0; c < letters; ++c)
        match.delta[q][c] =
            (q < static_cast<int>(u.size()) && alphabet[c] == u[q]) ? q + 1
                                                                    : q;
    acc = index_union(acc, match);
  }
  Dfa out = from_index(index_minimize(acc), alphabet);
  out.validate();
  return out;
}

std::vector<std::string> higman_basis(const Dfa& D) {
  if (!is_subword_closed(D))
    throw semantic_error("language is not subsequence-closed");
  const Dfa comp = dfa_complement(D);
  std::vector<std::string> basis;
  if (dfa_equiv(comp, superword_closure(basis, D.alphabet)).equal)
    return basis;

  // Subsequence-minimal words of the upward-closed complement are no longer
  // than its state count: a longer word compresses to a strictly shorter
  // accepted subsequence.
  std::uint64_t scanned = 0;
  std::vector<std::string> layer{""};
  for (int len = 0; len <= comp.stateCount; ++len) {
    for (const std::string& w : layer) {
      if (++scanned > enumeration_budget())
        throw budget_error("basis search exceeds the enumeration budget");
      if (!dfa_run(comp, w).second) continue;
      bool minimal = true;
      for (int i = 0; i < len && minimal; ++i)
        if (dfa_run(comp, w.substr(0, i) + w.substr(i + 1)).second)
          minimal = false;
      if (minimal) basis.push_back(w);
    }
    if (!basis.empty() &&
        dfa_equiv(comp, superword_closure(basis, D.alphabet)).equal)
      return basis;
    if (len == comp.stateCount) break;
    std::vector<std::string> next;
    next.reserve(layer.size() * D.alphabet.size());
    for (const std::string& w : layer)
      for (char c : D.alphabet) next.push_back(w + c);
    layer = std::move(next);
  }
  throw std::logic_error("basis search did not converge");
}

FormulaPtr pi1_sentence_for_language(const Dfa& D) {
  const std::vector<std::string> basis = higman_basis(D);
  for (const std::string& u : basis)
    if (u.empty())
      return mk_forall("x1", mk_not(mk_eq(var("x1"), var("x1"))));
  std::vector<Structure> forbidden;
  forbidden.reserve(basis.size());
  for (const std::string& u : basis)
    forbidden.push_back(word_to_structure(u, D.alphabet));
  return pi1_from_forbidden(word_vocab(D.alphabet), forbidden);
}

}  // namespace fopreserve
