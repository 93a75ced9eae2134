#include <string>

#include "doctest.h"
#include "fopreserve/dfa.hpp"
#include "fopreserve/errors.hpp"
#include "support/gen.hpp"

using namespace fopreserve;

namespace {

const char* kContainsA =
    "dfa over {a,b} { states=2; start=0; accepting={1}; "
    "0,a->1; 0,b->0; 1,a->1; 1,b->1; }";

Dfa contains_letter(char hit, char miss) {
  Dfa d;
  d.alphabet = {std::min(hit, miss), std::max(hit, miss)};
  d.stateCount = 2;
  d.start = 0;
  d.accepting = {false, true};
  int hi = d.letter_index(hit);
  d.delta = {{0, 0}, {1, 1}};
  d.delta[0][hi] = 1;
  return d;
}

Dfa constant_language(bool acceptAll) {
  Dfa d;
  d.alphabet = {'a', 'b'};
  d.stateCount = 1;
  d.start = 0;
  d.accepting = {acceptAll};
  d.delta = {{0, 0}};
  return d;
}

Dfa random_dfa(testgen::Rng& rng, int maxStates) {
  Dfa d;
  d.alphabet = {'a', 'b'};
  d.stateCount = 1 + testgen::pick(rng, maxStates);
  d.start = testgen::pick(rng, d.stateCount);
  for (int s = 0; s < d.stateCount; ++s) {
    d.accepting.push_back(testgen::pick(rng, 2) == 1);
    d.delta.push_back({testgen::pick(rng, d.stateCount), testgen::pick(rng, d.stateCount)});
  }
  return d;
}

std::string random_word(testgen::Rng& rng, int maxLen) {
  std::string w;
  int len = testgen::pick(rng, maxLen + 1);
  for (int i = 0; i < len; ++i) w += (testgen::pick(rng, 2) ? 'b' : 'a');
  return w;
}

}  // namespace

TEST_CASE("automaton text round-trips byte for byte") {
  auto d = parse_dfa(kContainsA);
  CHECK(print_dfa(d) == kContainsA);
  CHECK(d.stateCount == 2);
  CHECK(d.letter_index('b') == 1);
  CHECK(d.letter_index('z') == -1);
  auto empty = parse_dfa("dfa over {a} { states=1; start=0; accepting={}; 0,a->0; }");
  CHECK(print_dfa(empty) ==
        "dfa over {a} { states=1; start=0; accepting={}; 0,a->0; }");
}

TEST_CASE("malformed automaton text is rejected") {
  CHECK_THROWS_AS(parse_dfa("dfa over {a} { states=1; start=0 }"), parse_error);
  CHECK_THROWS_AS(parse_dfa("nfa over {a} { }"), parse_error);
  CHECK_THROWS_AS(
      parse_dfa("dfa over {a} { states=1; start=0; accepting={}; 0,a->0; } x"),
      parse_error);
  // Missing and duplicate transitions, out-of-range states.
  CHECK_THROWS_AS(parse_dfa("dfa over {a,b} { states=1; start=0; accepting={}; 0,a->0; }"),
                  semantic_error);
  CHECK_THROWS_AS(
      parse_dfa("dfa over {a} { states=1; start=0; accepting={}; 0,a->0; 0,a->0; }"),
      semantic_error);
  CHECK_THROWS_AS(parse_dfa("dfa over {a} { states=1; start=0; accepting={3}; 0,a->0; }"),
                  semantic_error);
  CHECK_THROWS_AS(parse_dfa("dfa over {a} { states=1; start=2; accepting={}; 0,a->0; }"),
                  semantic_error);
  CHECK_THROWS_AS(parse_dfa("dfa over {a} { states=1; start=0; accepting={}; 0,b->0; }"),
                  semantic_error);
  CHECK_THROWS_AS(parse_dfa("dfa over {a} { states=0; start=0; accepting={}; }"),
                  semantic_error);
}

TEST_CASE("execution reports end state and acceptance") {
  auto d = parse_dfa(kContainsA);
  CHECK(dfa_run(d, "bb") == std::make_pair(0, false));
  CHECK(dfa_run(d, "bab") == std::make_pair(1, true));
  CHECK(dfa_run(d, "") == std::make_pair(0, false));
  auto all = constant_language(true);
  CHECK(dfa_run(all, "") == std::make_pair(0, true));
  CHECK_THROWS_AS(dfa_run(d, "abc"), semantic_error);
}

TEST_CASE("minimization collapses duplicates and drops unreachable states") {
  // States 2 and 3 duplicate state 1; state 4 is unreachable.
  auto bloated = parse_dfa(
      "dfa over {a,b} { states=5; start=0; accepting={1,2,3}; "
      "0,a->1; 0,b->0; 1,a->2; 1,b->3; 2,a->3; 2,b->1; 3,a->1; 3,b->2; "
      "4,a->0; 4,b->4; }");
  CHECK(print_dfa(dfa_minimize(bloated)) == kContainsA);
}

TEST_CASE("equivalent automata share one canonical form") {
  auto viaUnion = dfa_union(contains_letter('a', 'b'), contains_letter('a', 'b'));
  CHECK(print_dfa(viaUnion) == kContainsA);
  CHECK(print_dfa(dfa_minimize(parse_dfa(kContainsA))) == kContainsA);
}

TEST_CASE("complement flips the language canonically") {
  auto noA = dfa_complement(parse_dfa(kContainsA));
  CHECK(print_dfa(noA) ==
        "dfa over {a,b} { states=2; start=0; accepting={0}; "
        "0,a->1; 0,b->0; 1,a->1; 1,b->1; }");
  CHECK(dfa_run(noA, "bbb").second);
  CHECK(!dfa_run(noA, "ba").second);
}

TEST_CASE("intersection tracks both letters independently") {
  auto both = dfa_intersect(contains_letter('a', 'b'), contains_letter('b', 'a'));
  CHECK(both.stateCount == 4);
  CHECK(dfa_run(both, "ab").second);
  CHECK(dfa_run(both, "ba").second);
  CHECK(!dfa_run(both, "aa").second);
  CHECK(!dfa_run(both, "").second);
}

TEST_CASE("language equality finds shortest lex-least separators") {
  auto d = parse_dfa(kContainsA);
  auto equal = dfa_equiv(d, dfa_minimize(d));
  CHECK(equal.equal);
  CHECK(!equal.separator.has_value());

  auto split = dfa_equiv(contains_letter('a', 'b'), contains_letter('b', 'a'));
  REQUIRE(!split.equal);
  CHECK(*split.separator == "a");

  auto epsilon = dfa_equiv(constant_language(false), constant_language(true));
  REQUIRE(!epsilon.equal);
  CHECK(*epsilon.separator == "");

  Dfa other = constant_language(true);
  other.alphabet = {'a', 'c'};
  CHECK_THROWS_AS(dfa_equiv(constant_language(true), other), semantic_error);
}

TEST_CASE("a nondeterministic guess determinizes to the minimal automaton") {
  IndexNfa n;
  n.letters = 2;
  n.states = 2;
  n.start = {0};
  n.accepting = {false, true};
  n.delta = {{{0, 1}, {0}}, {{}, {}}};
  auto endsInA = from_index(index_minimize(determinize(n)), {'a', 'b'});
  auto reference = parse_dfa(
      "dfa over {a,b} { states=2; start=0; accepting={1}; "
      "0,a->1; 0,b->0; 1,a->1; 1,b->0; }");
  CHECK(dfa_equiv(endsInA, reference).equal);
  CHECK(print_dfa(endsInA) == print_dfa(dfa_minimize(reference)));
}

TEST_CASE("minimization preserves the language and is idempotent") {
  testgen::Rng rng(20260822);
  for (int trial = 0; trial < 150; ++trial) {
    auto d = random_dfa(rng, 5);
    auto m = dfa_minimize(d);
    CAPTURE(print_dfa(d));
    REQUIRE(dfa_equiv(d, m).equal);
    REQUIRE(m.stateCount <= d.stateCount);
    REQUIRE(print_dfa(dfa_minimize(m)) == print_dfa(m));
    REQUIRE(print_dfa(dfa_complement(dfa_complement(d))) == print_dfa(m));
  }
}

TEST_CASE("boolean operations agree with pointwise acceptance") {
  testgen::Rng rng(20260823);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_dfa(rng, 4);
    auto b = random_dfa(rng, 4);
    auto uni = dfa_union(a, b);
    auto inter = dfa_intersect(a, b);
    for (int i = 0; i < 8; ++i) {
      auto w = random_word(rng, 6);
      CAPTURE(w);
      REQUIRE(dfa_run(uni, w).second == (dfa_run(a, w).second || dfa_run(b, w).second));
      REQUIRE(dfa_run(inter, w).second == (dfa_run(a, w).second && dfa_run(b, w).second));
    }
  }
}

TEST_CASE("separators are shortest and witness the split") {
  testgen::Rng rng(20260824);
  int found = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_dfa(rng, 4);
    auto b = random_dfa(rng, 4);
    auto r = dfa_equiv(a, b);
    if (r.equal) continue;
    ++found;
    const std::string& w = *r.separator;
    CAPTURE(print_dfa(a));
    CAPTURE(print_dfa(b));
    CAPTURE(w);
    REQUIRE(dfa_run(a, w).second != dfa_run(b, w).second);
    // No strictly shorter word separates: exhaust all words below |w|.
    std::vector<std::string> frontier = {""};
    for (std::size_t len = 0; len < w.size(); ++len) {
      std::vector<std::string> next;
      for (const auto& u : frontier) {
        REQUIRE(dfa_run(a, u).second == dfa_run(b, u).second);
        next.push_back(u + 'a');
        next.push_back(u + 'b');
      }
      frontier = std::move(next);
    }
  }
  CHECK(found >= 30);
}
