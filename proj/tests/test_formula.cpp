#include <string>

#include "doctest.h"
#include "fopreserve/errors.hpp"
#include "fopreserve/formula.hpp"
#include "fopreserve/parser.hpp"
#include "support/gen.hpp"

using namespace fopreserve;

namespace {

Vocabulary graph_vocab() { return parse_vocab("vocab { E/2; P/1; c }"); }

bool message_contains(const std::exception& e, const std::string& needle) {
  return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("quantifier chain parses to nested AST") {
  auto v = graph_vocab();
  auto f = parse_formula("exists x. forall y. E(x,y)", v);
  REQUIRE(f->kind == FKind::Exists);
  CHECK(f->name == "x");
  auto& body = f->kids[0];
  REQUIRE(body->kind == FKind::Forall);
  CHECK(body->name == "y");
  auto& atom = body->kids[0];
  REQUIRE(atom->kind == FKind::Pred);
  CHECK(atom->name == "E");
  REQUIRE(atom->terms.size() == 2);
  CHECK(atom->terms[0] == var("x"));
  CHECK(atom->terms[1] == var("y"));
  CHECK(f->is_sentence());
}

TEST_CASE("unbalanced paren reports offset") {
  auto v = graph_vocab();
  try {
    parse_formula("P(x", v);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(message_contains(e, "offset 3"));
  }
}

TEST_CASE("set quantifier parses to set AST") {
  auto v = graph_vocab();
  auto f = parse_formula("Exists X. forall x. X(x)", v);
  REQUIRE(f->kind == FKind::ExistsSet);
  CHECK(f->name == "X");
  auto& body = f->kids[0];
  REQUIRE(body->kind == FKind::Forall);
  auto& atom = body->kids[0];
  REQUIRE(atom->kind == FKind::SetMem);
  CHECK(atom->name == "X");
  CHECK(atom->terms[0] == var("x"));
  CHECK(f->is_sentence());
  CHECK(has_set_nodes(f));
}

TEST_CASE("variable list sugar expands to nested quantifiers") {
  auto v = graph_vocab();
  auto sugar = parse_formula("forall x, y. E(x,y)", v);
  auto plain = parse_formula("forall x. forall y. E(x,y)", v);
  CHECK(equal(sugar, plain));
}

TEST_CASE("printer uses declared precedence with minimal parentheses") {
  auto v = graph_vocab();
  auto same = [&](const std::string& in, const std::string& out) {
    CAPTURE(in);
    CHECK(print_formula(parse_formula(in, v)) == out);
  };
  same("exists x. forall y. E(x,y)", "exists x. forall y. E(x,y)");
  same("~P(x) & P(y) -> P(z) | P(w)", "~P(x) & P(y) -> P(z) | P(w)");
  same("(P(x) | P(y)) & P(z)", "(P(x) | P(y)) & P(z)");
  same("P(x) -> (P(y) -> P(z))", "P(x) -> P(y) -> P(z)");
  same("(P(x) -> P(y)) -> P(z)", "(P(x) -> P(y)) -> P(z)");
  same("(P(x) <-> P(y)) <-> P(z)", "P(x) <-> P(y) <-> P(z)");
  same("P(x) <-> (P(y) <-> P(z))", "P(x) <-> (P(y) <-> P(z))");
  same("forall x. P(x) & P(x)", "forall x. P(x) & P(x)");
  same("(forall x. P(x)) & P(y)", "(forall x. P(x)) & P(y)");
  same("~(P(x) & P(y))", "~(P(x) & P(y))");
  same("~~P(x)", "~~P(x)");
  same("x = c & ~(x = y)", "x = c & ~(x = y)");
}

TEST_CASE("negated equality prints with parentheses") {
  auto f = mk_not(mk_eq(var("x"), var("y")));
  CHECK(print_formula(f) == "~(x = y)");
}

TEST_CASE("parse after print is structural identity on handbuilt formulas") {
  auto v = graph_vocab();
  std::vector<FormulaPtr> cases = {
      mk_eq(cst("c"), cst("c")),
      mk_forall("x", mk_implies(mk_pred("P", {var("x")}), mk_eq(var("x"), cst("c")))),
      mk_exists("x", mk_forall("y", mk_iff(mk_pred("E", {var("x"), var("y")}),
                                           mk_not(mk_eq(var("x"), var("y")))))),
      mk_forall_set("X", mk_exists("x", mk_setmem("X", var("x")))),
      mk_or(mk_and(mk_pred("P", {cst("c")}), mk_not(mk_pred("P", {cst("c")}))),
            mk_exists("u", mk_eq(var("u"), var("u")))),
  };
  for (auto& f : cases) {
    auto printed = print_formula(f);
    CAPTURE(printed);
    auto back = parse_formula(printed, v);
    CHECK(equal(f, back));
    CHECK(print_formula(back) == printed);
  }
}

TEST_CASE("parse after print is structural identity on random formulas") {
  auto v = graph_vocab();
  testgen::Rng rng(20260818);
  for (int i = 0; i < 300; ++i) {
    auto f = testgen::random_mso_sentence(rng, v, 4);
    auto printed = print_formula(f);
    CAPTURE(printed);
    auto back = parse_formula(printed, v);
    REQUIRE(equal(f, back));
    REQUIRE(print_formula(back) == printed);
  }
}

TEST_CASE("free variables and sentence detection") {
  auto v = graph_vocab();
  auto f = parse_formula("E(x,y) & (exists u. E(u,x))", v);
  CHECK(f->freeVars == std::vector<std::string>{"x", "y"});
  CHECK(!f->is_sentence());
  auto g = parse_formula("Forall X. X(x)", v);
  CHECK(g->freeVars == std::vector<std::string>{"x"});
  CHECK(g->freeSetVars.empty());
  auto h = parse_formula("X(x)", v);
  CHECK(h->freeSetVars == std::vector<std::string>{"X"});
}

TEST_CASE("quantifier rank counts both sorts") {
  auto v = graph_vocab();
  CHECK(quantifier_rank(parse_formula("exists x. forall y. E(x,y)", v)) == 2);
  CHECK(quantifier_rank(parse_formula("(exists x. P(x)) & (forall y. P(y))", v)) == 1);
  CHECK(quantifier_rank(parse_formula("Exists X. forall x. X(x)", v)) == 2);
  CHECK(quantifier_rank(parse_formula("P(c)", v)) == 0);
}

TEST_CASE("all variable names include bound occurrences") {
  auto v = graph_vocab();
  auto f = parse_formula("E(x,y) & (exists u. E(u,x))", v);
  CHECK(all_var_names(f) == std::vector<std::string>{"u", "x", "y"});
}

TEST_CASE("arity and symbol errors") {
  auto v = graph_vocab();
  CHECK_THROWS_AS(parse_formula("E(x)", v), parse_error);
  CHECK_THROWS_AS(parse_formula("q(x)", v), parse_error);
  CHECK_THROWS_AS(parse_formula("E(forall, x)", v), parse_error);
  CHECK_THROWS_AS(parse_formula("P(x) P(y)", v), parse_error);
  CHECK_THROWS_AS(parse_formula("", v), parse_error);
  CHECK_THROWS_AS(parse_formula("forall P. P = P", v), parse_error);
}

TEST_CASE("connective folds fold left and reject empty input") {
  auto a = mk_pred("P", {cst("c")});
  auto b = mk_eq(cst("c"), cst("c"));
  auto c = mk_not(a);
  auto f = mk_and_all({a, b, c});
  CHECK(equal(f, mk_and(mk_and(a, b), c)));
  CHECK(equal(mk_or_all({a}), a));
  CHECK(mk_and_all({}) == nullptr);
}
