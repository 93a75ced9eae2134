#include "fopreserve/dfa.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <queue>
#include <string>
#include <utility>

#include "fopreserve/errors.hpp"

namespace fopreserve {

int Dfa::letter_index(char c) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == c) return static_cast<int>(i);
  return -1;
}

void Dfa::validate() const {
  if (alphabet.empty()) throw semantic_error("automaton alphabet is empty");
  for (char c : alphabet)
    if (!std::isalnum(static_cast<unsigned char>(c)))
      throw semantic_error("automaton letters must be alphanumeric");
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    for (std::size_t j = i + 1; j < alphabet.size(); ++j)
      if (alphabet[i] == alphabet[j])
        throw semantic_error("duplicate letter in the alphabet");
  if (stateCount < 1) throw semantic_error("automaton needs at least one state");
  if (start < 0 || start >= stateCount)
    throw semantic_error("start state out of range");
  if (accepting.size() != static_cast<std::size_t>(stateCount) ||
      delta.size() != static_cast<std::size_t>(stateCount))
    throw semantic_error("automaton tables do not match the state count");
  for (const auto& row : delta) {
    if (row.size() != alphabet.size())
      throw semantic_error("transition table is not total");
    for (int t : row)
      if (t < 0 || t >= stateCount)
        throw semantic_error("transition target out of range");
  }
}

Dfa parse_dfa(const std::string& text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto literal = [&](const std::string& word) {
    skip();
    if (text.compare(pos, word.size(), word) != 0)
      throw parse_error("expected '" + word + "'", pos);
    pos += word.size();
  };
  auto number = [&]() -> int {
    skip();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw parse_error("expected a number", pos);
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1000000) throw parse_error("number too large", pos);
      ++pos;
    }
    return static_cast<int>(v);
  };
  auto letter = [&]() -> char {
    skip();
    if (pos >= text.size() || !std::isalnum(static_cast<unsigned char>(text[pos])))
      throw parse_error("expected a letter", pos);
    return text[pos++];
  };
  auto peek = [&]() -> char {
    skip();
    return pos < text.size() ? text[pos] : '\0';
  };

  Dfa d;
  literal("dfa");
  literal("over");
  literal("{");
  d.alphabet.push_back(letter());
  while (peek() == ',') {
    ++pos;
    d.alphabet.push_back(letter());
  }
  literal("}");
  literal("{");
  literal("states");
  literal("=");
  d.stateCount = number();
  literal(";");
  if (d.stateCount < 1)
    throw semantic_error("automaton needs at least one state");
  literal("start");
  literal("=");
  d.start = number();
  literal(";");
  literal("accepting");
  literal("=");
  literal("{");
  d.accepting.assign(d.stateCount, false);
  if (peek() != '}') {
    while (true) {
      int s = number();
      if (s >= d.stateCount) throw semantic_error("accepting state out of range");
      d.accepting[s] = true;
      if (peek() != ',') break;
      ++pos;
    }
  }
  literal("}");
  literal(";");
  d.delta.assign(d.stateCount, std::vector<int>(d.alphabet.size(), -1));
  while (peek() != '}') {
    int s = number();
    literal(",");
    char c = letter();
    literal("->");
    int t = number();
    literal(";");
    int li = d.letter_index(c);
    if (li < 0)
      throw semantic_error(std::string("transition on a letter outside the alphabet: '") + c + "'");
    if (s >= d.stateCount || t >= d.stateCount)
      throw semantic_error("transition state out of range");
    if (d.delta[s][li] != -1) throw semantic_error("duplicate transition");
    d.delta[s][li] = t;
  }
  literal("}");
  skip();
  if (pos != text.size()) throw parse_error("unexpected trailing input", pos);
  for (int s = 0; s < d.stateCount; ++s)
    for (std::size_t li = 0; li < d.alphabet.size(); ++li)
      if (d.delta[s][li] == -1)
        throw semantic_error(std::string("missing transition from state ") +
                             std::to_string(s) + " on '" + d.alphabet[li] + "'");
  d.validate();
  return d;
}

std::string print_dfa(const Dfa& d) {
  d.validate();
  std::string out = "dfa over {";
  for (std::size_t i = 0; i < d.alphabet.size(); ++i) {
    if (i) out += ',';
    out += d.alphabet[i];
  }
  out += "} { states=" + std::to_string(d.stateCount) +
         "; start=" + std::to_string(d.start) + "; accepting={";
  bool first = true;
  for (int s = 0; s < d.stateCount; ++s)
    if (d.accepting[s]) {
      if (!first) out += ',';
      out += std::to_string(s);
      first = false;
    }
  out += "};";
  for (int s = 0; s < d.stateCount; ++s)
    for (std::size_t li = 0; li < d.alphabet.size(); ++li) {
      out += ' ';
      out += std::to_string(s);
      out += ',';
      out += d.alphabet[li];
      out += "->";
      out += std::to_string(d.delta[s][li]);
      out += ';';
    }
  out += " }";
  return out;
}

std::pair<int, bool> dfa_run(const Dfa& d, const std::string& w) {
  d.validate();
  int state = d.start;
  for (char c : w) {
    int li = d.letter_index(c);
    if (li < 0)
      throw semantic_error(std::string("word letter outside the alphabet: '") + c + "'");
    state = d.delta[state][li];
  }
  return {state, d.accepting[state]};
}

namespace {

void validate_index(const IndexDfa& d) {
  if (d.states < 1) throw semantic_error("automaton needs at least one state");
  if (d.letters < 0) throw semantic_error("negative letter count");
  if (d.start < 0 || d.start >= d.states)
    throw semantic_error("start state out of range");
  if (d.accepting.size() != static_cast<std::size_t>(d.states) ||
      d.delta.size() != static_cast<std::size_t>(d.states))
    throw semantic_error("automaton tables do not match the state count");
  for (const auto& row : d.delta) {
    if (row.size() != static_cast<std::size_t>(d.letters))
      throw semantic_error("transition table is not total");
    for (int t : row)
      if (t < 0 || t >= d.states)
        throw semantic_error("transition target out of range");
  }
}

// Breadth-first reachable renumbering; letters explored in order, so the
// output numbering is canonical for the input.
IndexDfa bfs_renumber(const IndexDfa& d) {
  std::vector<int> id(d.states, -1);
  std::vector<int> order;
  std::queue<int> queue;
  id[d.start] = 0;
  order.push_back(d.start);
  queue.push(d.start);
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop();
    for (int li = 0; li < d.letters; ++li) {
      int t = d.delta[s][li];
      if (id[t] == -1) {
        id[t] = static_cast<int>(order.size());
        order.push_back(t);
        queue.push(t);
      }
    }
  }
  IndexDfa out;
  out.letters = d.letters;
  out.states = static_cast<int>(order.size());
  out.start = 0;
  out.accepting.resize(out.states);
  out.delta.assign(out.states, std::vector<int>(d.letters));
  for (int s = 0; s < out.states; ++s) {
    out.accepting[s] = d.accepting[order[s]];
    for (int li = 0; li < d.letters; ++li) out.delta[s][li] = id[d.delta[order[s]][li]];
  }
  return out;
}

IndexDfa product(const IndexDfa& a, const IndexDfa& b, bool intersect) {
  validate_index(a);
  validate_index(b);
  if (a.letters != b.letters) throw semantic_error("alphabet mismatch");
  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> order;
  auto intern = [&](int x, int y) {
    auto [it, fresh] = id.emplace(std::make_pair(x, y), static_cast<int>(order.size()));
    if (fresh) order.emplace_back(x, y);
    return it->second;
  };
  IndexDfa out;
  out.letters = a.letters;
  out.start = intern(a.start, b.start);
  for (std::size_t next = 0; next < order.size(); ++next) {
    auto [x, y] = order[next];
    out.accepting.push_back(intersect ? (a.accepting[x] && b.accepting[y])
                                      : (a.accepting[x] || b.accepting[y]));
    out.delta.emplace_back();
    for (int li = 0; li < a.letters; ++li)
      out.delta.back().push_back(intern(a.delta[x][li], b.delta[y][li]));
  }
  out.states = static_cast<int>(order.size());
  return out;
}

}  // namespace

IndexDfa determinize(const IndexNfa& n) {
  if (n.states < 0 || n.letters < 0) throw semantic_error("negative automaton size");
  if (n.accepting.size() != static_cast<std::size_t>(n.states) ||
      n.delta.size() != static_cast<std::size_t>(n.states))
    throw semantic_error("automaton tables do not match the state count");
  auto check = [&](int s) {
    if (s < 0 || s >= n.states) throw semantic_error("state out of range");
  };
  for (int s : n.start) check(s);
  for (const auto& row : n.delta) {
    if (row.size() != static_cast<std::size_t>(n.letters))
      throw semantic_error("transition table is not total");
    for (const auto& targets : row)
      for (int t : targets) check(t);
  }

  std::map<std::vector<int>, int> id;
  std::vector<std::vector<int>> order;
  auto intern = [&](std::vector<int> subset) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    auto [it, fresh] = id.emplace(subset, static_cast<int>(order.size()));
    if (fresh) order.push_back(std::move(subset));
    return it->second;
  };
  IndexDfa out;
  out.letters = n.letters;
  out.start = intern(n.start);
  for (std::size_t next = 0; next < order.size(); ++next) {
    std::vector<int> subset = order[next];
    bool acc = false;
    for (int s : subset) acc = acc || n.accepting[s];
    out.accepting.push_back(acc);
    out.delta.emplace_back();
    for (int li = 0; li < n.letters; ++li) {
      std::vector<int> targets;
      for (int s : subset)
        targets.insert(targets.end(), n.delta[s][li].begin(), n.delta[s][li].end());
      out.delta.back().push_back(intern(std::move(targets)));
    }
  }
  out.states = static_cast<int>(order.size());
  return out;
}

IndexDfa index_minimize(const IndexDfa& d) {
  validate_index(d);
  IndexDfa r = bfs_renumber(d);
  std::vector<int> cls(r.states);
  for (int s = 0; s < r.states; ++s) cls[s] = r.accepting[s] ? 1 : 0;
  int count = 2;
  while (true) {
    std::map<std::vector<int>, int> sigId;
    std::vector<int> next(r.states);
    for (int s = 0; s < r.states; ++s) {
      std::vector<int> sig;
      sig.push_back(cls[s]);
      for (int li = 0; li < r.letters; ++li) sig.push_back(cls[r.delta[s][li]]);
      auto [it, fresh] = sigId.emplace(std::move(sig), static_cast<int>(sigId.size()));
      (void)fresh;
      next[s] = it->second;
    }
    int nextCount = static_cast<int>(sigId.size());
    cls = std::move(next);
    if (nextCount == count) break;
    count = nextCount;
  }
  IndexDfa q;
  q.letters = r.letters;
  q.states = count;
  q.start = cls[r.start];
  q.accepting.assign(count, false);
  q.delta.assign(count, std::vector<int>(r.letters, -1));
  for (int s = 0; s < r.states; ++s) {
    q.accepting[cls[s]] = r.accepting[s];
    for (int li = 0; li < r.letters; ++li) q.delta[cls[s]][li] = cls[r.delta[s][li]];
  }
  return bfs_renumber(q);
}

IndexDfa index_complement(const IndexDfa& d) {
  validate_index(d);
  IndexDfa out = d;
  for (int s = 0; s < out.states; ++s) out.accepting[s] = !out.accepting[s];
  return out;
}

IndexDfa index_intersect(const IndexDfa& a, const IndexDfa& b) {
  return product(a, b, true);
}

IndexDfa index_union(const IndexDfa& a, const IndexDfa& b) {
  return product(a, b, false);
}

std::optional<std::vector<int>> index_separator(const IndexDfa& a,
                                                const IndexDfa& b) {
  validate_index(a);
  validate_index(b);
  if (a.letters != b.letters) throw semantic_error("alphabet mismatch");
  auto key = [&](int x, int y) {
    return static_cast<long long>(x) * b.states + y;
  };
  // parent: pair key -> (previous key, letter); start maps to itself.
  std::map<long long, std::pair<long long, int>> parent;
  auto differs = [&](int x, int y) { return a.accepting[x] != b.accepting[y]; };
  auto reconstruct = [&](long long k) {
    std::vector<int> word;
    long long startKey = key(a.start, b.start);
    while (k != startKey) {
      auto [prev, li] = parent.at(k);
      word.push_back(li);
      k = prev;
    }
    std::reverse(word.begin(), word.end());
    return word;
  };
  long long startKey = key(a.start, b.start);
  parent.emplace(startKey, std::make_pair(startKey, -1));
  if (differs(a.start, b.start)) return std::vector<int>{};
  std::queue<std::pair<int, int>> queue;
  queue.emplace(a.start, b.start);
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop();
    for (int li = 0; li < a.letters; ++li) {
      int nx = a.delta[x][li];
      int ny = b.delta[y][li];
      long long k = key(nx, ny);
      if (parent.count(k)) continue;
      parent.emplace(k, std::make_pair(key(x, y), li));
      if (differs(nx, ny)) return reconstruct(k);
      queue.emplace(nx, ny);
    }
  }
  return std::nullopt;
}

IndexDfa to_index(const Dfa& d) {
  d.validate();
  IndexDfa out;
  out.letters = static_cast<int>(d.alphabet.size());
  out.states = d.stateCount;
  out.start = d.start;
  out.accepting = d.accepting;
  out.delta = d.delta;
  return out;
}

Dfa from_index(const IndexDfa& d, const std::vector<char>& alphabet) {
  if (static_cast<int>(alphabet.size()) != d.letters)
    throw semantic_error("alphabet size does not match the automaton");
  Dfa out;
  out.alphabet = alphabet;
  out.stateCount = d.states;
  out.start = d.start;
  out.accepting = d.accepting;
  out.delta = d.delta;
  out.validate();
  return out;
}

namespace {
void require_same_alphabet(const Dfa& a, const Dfa& b) {
  if (a.alphabet != b.alphabet) throw semantic_error("alphabet mismatch");
}
}  // namespace

Dfa dfa_minimize(const Dfa& d) {
  return from_index(index_minimize(to_index(d)), d.alphabet);
}

Dfa dfa_complement(const Dfa& d) {
  return from_index(index_minimize(index_complement(to_index(d))), d.alphabet);
}

Dfa dfa_intersect(const Dfa& a, const Dfa& b) {
  require_same_alphabet(a, b);
  return from_index(index_minimize(index_intersect(to_index(a), to_index(b))),
                    a.alphabet);
}

Dfa dfa_union(const Dfa& a, const Dfa& b) {
  require_same_alphabet(a, b);
  return from_index(index_minimize(index_union(to_index(a), to_index(b))),
                    a.alphabet);
}

DfaEquivResult dfa_equiv(const Dfa& a, const Dfa& b) {
  require_same_alphabet(a, b);
  auto sep = index_separator(to_index(a), to_index(b));
  if (!sep) return {true, std::nullopt};
  std::string word;
  for (int li : *sep) word += a.alphabet[li];
  return {false, word};
}

}  // namespace fopreserve
