#include <set>
#include <functional>
#include <vector>

#include "doctest.h"
#include "fopreserve/errors.hpp"
#include "fopreserve/eval.hpp"
#include "fopreserve/parser.hpp"
#include "fopreserve/relativize.hpp"
#include "support/gen.hpp"

using namespace fopreserve;

namespace {

// Truth of the rewritten formula under x̄ ↦ ā, against the original sentence
// in the substructure induced by ā (plus constants).
bool contract_holds(const Structure& M, const FormulaPtr& phi,
                    const RelativizedFormula& rel, const std::vector<int>& a,
                    bool mso) {
  Assignment sigma;
  std::vector<int> S;
  for (std::size_t i = 0; i < rel.vars.size(); ++i) {
    sigma.foVars[rel.vars[i]] = a[i];
    S.push_back(a[i]);
  }
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  const Structure sub = induced(M, S).structure;
  const bool lhs = mso ? eval_mso(M, rel.result, sigma) : eval_fo(M, rel.result, sigma);
  const bool rhs = mso ? eval_mso(sub, phi) : eval_fo(sub, phi);
  return lhs == rhs;
}

void sweep_contract(const Vocabulary& v, const FormulaPtr& phi,
                    const std::vector<std::string>& vars, int maxN, bool mso) {
  auto rel = mso ? relativize_mso(v, phi, vars) : relativize_fo(v, phi, vars);
  CHECK(!has_quantifier_nodes(rel.result));
  CHECK(!has_set_nodes(rel.result));
  testgen::Rng rng(4242);
  for (int n = 1; n <= maxN; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      auto M = testgen::random_structure(rng, v, n);
      std::vector<int> a(vars.size());
      const int sweeps = vars.empty() ? 1 : 0;
      if (sweeps) {
        REQUIRE(contract_holds(M, phi, rel, a, mso));
        continue;
      }
      for (auto& x : a) x = testgen::pick(rng, n);
      CAPTURE(print_structure(M));
      REQUIRE(contract_holds(M, phi, rel, a, mso));
    }
  }
}

}  // namespace

TEST_CASE("single existential becomes a disjunction over names and constants") {
  auto v = parse_vocab("vocab { P/1; c }");
  auto phi = parse_formula("exists x. P(x)", v);
  auto rel = relativize_fo(v, phi, {"z1"});
  CHECK(print_formula(rel.result) == "P(z1) | P(c)");
}

TEST_CASE("quantifier-free sentences are untouched") {
  auto v = parse_vocab("vocab { c }");
  auto phi = parse_formula("c = c", v);
  auto rel = relativize_fo(v, phi, {"z1"});
  CHECK(equal(rel.result, phi));
}

TEST_CASE("two quantifiers over one name behave like the induced point") {
  auto v = parse_vocab("vocab { E/2 }");
  auto phi = parse_formula("exists x. forall y. E(x,y)", v);
  auto rel = relativize_fo(v, phi, {"z1"});
  CHECK(!has_quantifier_nodes(rel.result));
  auto loop = parse_formula("E(z1,z1)", v);
  testgen::Rng rng(1);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 30; ++trial) {
      auto M = testgen::random_structure(rng, v, n);
      for (int a = 0; a < n; ++a) {
        Assignment sigma;
        sigma.foVars["z1"] = a;
        REQUIRE(eval_fo(M, rel.result, sigma) == eval_fo(M, loop, sigma));
      }
    }
}

TEST_CASE("rewriting agrees with evaluation in the induced substructure") {
  auto v = parse_vocab("vocab { E/2; P/1; c }");
  testgen::Rng rng(20260818);
  int done = 0;
  while (done < 250) {
    auto phi = testgen::random_sentence(rng, v, 3);
    const int width = 1 + testgen::pick(rng, 3);
    std::vector<std::string> vars;
    for (int i = 0; i < width; ++i) vars.push_back("z" + std::to_string(i + 1));
    auto rel = relativize_fo(v, phi, vars);
    CHECK(!has_quantifier_nodes(rel.result));
    const int n = 1 + testgen::pick(rng, 5);
    auto M = testgen::random_structure(rng, v, n);
    std::vector<int> a(vars.size());
    for (auto& x : a) x = testgen::pick(rng, n);
    CAPTURE(print_formula(phi));
    CAPTURE(print_structure(M));
    REQUIRE(contract_holds(M, phi, rel, a, false));
    ++done;
  }
}

TEST_CASE("set rewriting agrees with subset-sweeping evaluation") {
  auto v = parse_vocab("vocab { E/2; P/1 }");
  testgen::Rng rng(777);
  int done = 0;
  while (done < 120) {
    auto phi = testgen::random_mso_sentence(rng, v, 3);
    std::vector<std::string> vars = {"z1", "z2"};
    auto rel = relativize_mso(v, phi, vars);
    CHECK(!has_set_nodes(rel.result));
    CHECK(!has_quantifier_nodes(rel.result));
    const int n = 1 + testgen::pick(rng, 4);
    auto M = testgen::random_structure(rng, v, n);
    std::vector<int> a(vars.size());
    for (auto& x : a) x = testgen::pick(rng, n);
    CAPTURE(print_formula(phi));
    REQUIRE(contract_holds(M, phi, rel, a, true));
    ++done;
  }
}

TEST_CASE("set rewriting handles the universal-set and letter-set examples") {
  auto v = parse_vocab("vocab { P/1 }");
  auto phi = parse_formula("Exists X. forall x. X(x)", v);
  sweep_contract(v, phi, {"z1"}, 3, true);

  auto word = parse_vocab("vocab { leq/2; Pa/1; Pb/1 }");
  auto psi = parse_formula("Exists X. exists x. (X(x) & Pa(x))", word);
  auto rel = relativize_mso(word, psi, {"z1"});
  auto pa = parse_formula("Pa(z1)", word);
  testgen::Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto M = testgen::random_structure(rng, word, 1 + testgen::pick(rng, 3));
    for (int a = 0; a < M.n; ++a) {
      Assignment sigma;
      sigma.foVars["z1"] = a;
      REQUIRE(eval_fo(M, rel.result, sigma) == eval_fo(M, pa, sigma));
    }
  }
}

TEST_CASE("set guesses respect equal values across names") {
  auto v = parse_vocab("vocab { P/1 }");
  auto phi = parse_formula("Exists X. (exists u. exists v. (X(u) & ~X(v) & u = v))", v);
  auto rel = relativize_mso(v, phi, {"z1", "z2"});
  auto M = parse_structure("vocab { P/1 } structure over 2 { P = { 0 }; }");
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Assignment sigma;
      sigma.foVars["z1"] = a;
      sigma.foVars["z2"] = b;
      REQUIRE(!eval_fo(M, rel.result, sigma));
    }
}

TEST_CASE("prefix assembly orders the two quantifier blocks") {
  auto v = parse_vocab("vocab { E/2 }");
  auto phi = parse_formula("exists x. forall y. E(x,y)", v);
  auto psi = build_psi(v, phi, 1, 2);
  REQUIRE(psi->kind == FKind::Exists);
  CHECK(psi->name == "x1");
  REQUIRE(psi->kids[0]->kind == FKind::Forall);
  CHECK(psi->kids[0]->name == "y1");
  REQUIRE(psi->kids[0]->kids[0]->kind == FKind::Forall);
  CHECK(psi->kids[0]->kids[0]->name == "y2");
  CHECK(!has_quantifier_nodes(psi->kids[0]->kids[0]->kids[0]));

  auto M = parse_structure("vocab { E/2 } structure over 2 { E = { (0,0) (0,1) }; }");
  CHECK(eval_fo(M, build_psi(v, phi, 1, 1)));
}

TEST_CASE("longer universal prefixes only strengthen the sentence") {
  auto v = parse_vocab("vocab { E/2; P/1 }");
  testgen::Rng rng(31337);
  int done = 0;
  while (done < 80) {
    auto phi = testgen::random_sentence(rng, v, 3);
    const int n = 1 + testgen::pick(rng, 3);
    const int m = n + 1 + testgen::pick(rng, 2);
    auto weak = build_psi(v, phi, 0, n);
    auto strong = build_psi(v, phi, 0, m);
    auto M = testgen::random_structure(rng, v, 1 + testgen::pick(rng, 4));
    if (eval_fo(M, strong)) {
      CAPTURE(print_formula(phi));
      REQUIRE(eval_fo(M, weak));
    }
    ++done;
  }
}

TEST_CASE("rewriting preconditions are enforced") {
  auto v = parse_vocab("vocab { E/2; P/1 }");
  auto phi = parse_formula("exists x. P(x)", v);
  CHECK_THROWS_AS(relativize_fo(v, phi, {}), semantic_error);
  CHECK_THROWS_AS(relativize_fo(v, phi, {"x"}), semantic_error);
  CHECK_THROWS_AS(relativize_fo(v, phi, {"z1", "z1"}), semantic_error);
  CHECK_THROWS_AS(relativize_fo(v, phi, {"Z"}), semantic_error);
  CHECK_THROWS_AS(relativize_fo(v, phi, {"P"}), semantic_error);
  CHECK_THROWS_AS(relativize_fo(v, parse_formula("P(x)", v), {"z1"}), semantic_error);
  CHECK_THROWS_AS(relativize_fo(v, parse_formula("Exists X. exists x. X(x)", v), {"z1"}),
                  semantic_error);
  CHECK_THROWS_AS(build_psi(v, phi, 0, 0), semantic_error);
  auto withConst = parse_vocab("vocab { P/1; c }");
  CHECK(!has_quantifier_nodes(
      build_psi(withConst, parse_formula("exists x. P(x)", withConst), 0, 0)));
}

TEST_CASE("diagram lists facts, inequalities, constant locations") {
  auto one = parse_structure("vocab { P/1 } structure over 1 { P = { 0 }; }");
  auto d1 = diagram(one);
  CHECK(print_formula(d1.delta) == "P(e0)");
  CHECK(d1.vocab.constants == std::vector<std::string>{"e0"});

  auto two = parse_structure("vocab { P/1 } structure over 2 { }");
  CHECK(print_formula(diagram(two).delta) == "~P(e0) & ~P(e1) & ~(e0 = e1)");

  auto edge = parse_structure("vocab { E/2 } structure over 2 { E = { (0,1) }; }");
  CHECK(print_formula(diagram(edge).delta) ==
        "~E(e0,e0) & E(e0,e1) & ~E(e1,e0) & ~E(e1,e1) & ~(e0 = e1)");

  auto withConst = parse_structure("vocab { c } structure over 2 { c = 1; }");
  CHECK(print_formula(diagram(withConst).delta) == "~(e0 = e1) & c = e1");
}

TEST_CASE("diagram constant prefix steps around name clashes") {
  auto M = parse_structure("vocab { P/1; e0 } structure over 2 { P = { 0 }; e0 = 0; }");
  auto d = diagram(M);
  CHECK(d.vocab.constants == std::vector<std::string>{"e0", "ee0", "ee1"});
}

TEST_CASE("diagram satisfies its own structure under the fresh names") {
  testgen::Rng rng(11);
  auto v = parse_vocab("vocab { E/2; P/1 }");
  for (int trial = 0; trial < 30; ++trial) {
    auto M = testgen::random_structure(rng, v, 1 + testgen::pick(rng, 3));
    auto d = diagram(M);
    Structure expanded = make_empty_structure(d.vocab, M.n);
    expanded.relations = M.relations;
    for (int i = 0; i < M.n; ++i) expanded.constantMap[i] = i;
    REQUIRE(eval_fo(expanded, d.delta));
  }
}

namespace {

// Whether some injective map embeds F into M preserving all relations in
// both directions.
bool embeds(const Structure& F, const Structure& M) {
  if (F.n > M.n) return false;
  std::vector<int> map(F.n, -1);
  std::vector<bool> used(M.n, false);
  auto consistent = [&]() {
    for (std::size_t p = 0; p < F.vocab.predicates.size(); ++p) {
      const int arity = F.vocab.predicates[p].second;
      for (std::uint64_t i = 0; i < tuple_count(F.n, arity); ++i) {
        auto t = index_tuple(F.n, arity, i);
        std::vector<int> im;
        bool ready = true;
        for (int c : t) {
          if (map[c] < 0) { ready = false; break; }
          im.push_back(map[c]);
        }
        if (ready && F.relations[p][i] != M.has(static_cast<int>(p), im)) return false;
      }
    }
    return true;
  };
  std::function<bool(int)> go = [&](int i) -> bool {
    if (i == F.n) return true;
    for (int m = 0; m < M.n; ++m) {
      if (used[m]) continue;
      map[i] = m;
      used[m] = true;
      if (consistent() && go(i + 1)) return true;
      used[m] = false;
      map[i] = -1;
    }
    return false;
  };
  return go(0);
}

}  // namespace

TEST_CASE("forbidden-substructure sentences match a brute-force embedder") {
  auto v = parse_vocab("vocab { E/2 }");
  CHECK(print_formula(pi1_from_forbidden(v, {})) == "forall x1. x1 = x1");

  auto pv = parse_vocab("vocab { P/1 }");
  auto vertex = parse_structure("vocab { P/1 } structure over 1 { P = { 0 }; }");
  auto sentence = pi1_from_forbidden(pv, {vertex});
  CHECK(print_formula(sentence) == "forall x1. ~P(x1)");

  testgen::Rng rng(2026);
  auto gv = parse_vocab("vocab { E/2; P/1 }");
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Structure> forbidden;
    const int count = 1 + testgen::pick(rng, 2);
    for (int i = 0; i < count; ++i)
      forbidden.push_back(testgen::random_structure(rng, gv, 1 + testgen::pick(rng, 3)));
    auto s = pi1_from_forbidden(gv, forbidden);
    auto M = testgen::random_structure(rng, gv, 1 + testgen::pick(rng, 4));
    bool any = false;
    for (const auto& F : forbidden) any = any || embeds(F, M);
    CAPTURE(print_formula(s));
    REQUIRE(eval_fo(M, s) == !any);
  }
}

TEST_CASE("type cycle sentence for one predicate misses a type when satisfied") {
  auto v = parse_vocab("vocab { P/1 }");
  auto phi = type_cycle_sentence({"P"});
  CHECK(print_formula(phi) ==
        "exists x. forall y. (~P(x) -> ~P(y)) & (P(x) -> ~~P(y))");
  auto both = parse_structure("vocab { P/1 } structure over 2 { P = { 0 }; }");
  CHECK(!eval_fo(both, phi));
  auto onlyP = parse_structure("vocab { P/1 } structure over 1 { P = { 0 }; }");
  CHECK(eval_fo(onlyP, phi));
  CHECK_THROWS_AS(type_cycle_sentence({}), semantic_error);
}
