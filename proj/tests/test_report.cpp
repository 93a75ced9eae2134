#include <string>

#include "doctest.h"
#include "fopreserve/modellab.hpp"
#include "fopreserve/parser.hpp"
#include "fopreserve/report.hpp"

using namespace fopreserve;

TEST_CASE("a clean sweep renders as a single verdict line") {
  auto v = parse_vocab("vocab { E/2 }");
  auto phi = parse_formula("forall x. (E(x,x) | ~E(x,x))", v);
  auto verdict = ps_check(v, phi, 3);
  CHECK(render_verdict(verdict) == "VERDICT: PASS bound=3\n");
}

TEST_CASE("a substructure counterexample renders model and subset") {
  auto v = parse_vocab("vocab { P/1 }");
  auto phi = parse_formula("exists x. P(x)", v);
  auto verdict = ps_check(v, phi, 2);
  REQUIRE(verdict.status == VerdictStatus::Counterexample);
  CHECK(render_verdict(verdict) ==
        "VERDICT: FAIL bound=2\n"
        "counterexample model:\n"
        "vocab { P/1 }\n"
        "structure over 2 { P = { 0 }; }\n"
        "substructure: { 1 }\n"
        "note: substructure fails the sentence\n");
}

TEST_CASE("a cover counterexample renders every member") {
  auto v = parse_vocab("vocab { E/2 }");
  auto phi =
      parse_formula("forall x. forall y. forall z. (x = y) | (x = z) | (y = z)", v);
  auto verdict = kcover_preservation_check(v, phi, 2, 3);
  REQUIRE(verdict.status == VerdictStatus::Counterexample);
  CHECK(render_verdict(verdict) ==
        "VERDICT: FAIL bound=3\n"
        "counterexample model:\n"
        "vocab { E/2 }\n"
        "structure over 3 { }\n"
        "cover member: { 0 1 }\n"
        "cover member: { 0 2 }\n"
        "cover member: { 1 2 }\n"
        "note: cover members satisfy the sentence but the model does not\n");
}

TEST_CASE("an equivalence counterexample renders both truth values") {
  auto v = parse_vocab("vocab { P/1 }");
  auto lhs = parse_formula("exists x. P(x)", v);
  auto rhs = parse_formula("forall x. P(x)", v);
  auto verdict = check_equiv_upto(v, lhs, rhs, 2);
  REQUIRE(verdict.status == VerdictStatus::Counterexample);
  CHECK(render_verdict(verdict) ==
        "VERDICT: FAIL bound=2\n"
        "counterexample model:\n"
        "vocab { P/1 }\n"
        "structure over 2 { P = { 0 }; }\n"
        "lhs: true\n"
        "rhs: false\n"
        "note: sentences disagree\n");
}

TEST_CASE("word witnesses render bare with an empty-word marker") {
  Verdict v;
  v.status = VerdictStatus::Counterexample;
  v.boundChecked = 5;
  v.witness = CounterWitness{};
  v.witness->word = "abba";
  v.witness->note = "languages disagree";
  CHECK(render_verdict(v) ==
        "VERDICT: FAIL bound=5\nword: abba\nnote: languages disagree\n");
  v.witness->word = "";
  CHECK(render_verdict(v) ==
        "VERDICT: FAIL bound=5\nword: (empty)\nnote: languages disagree\n");
}

TEST_CASE("a minimal-core report lists cores without witness fields") {
  auto M = parse_structure(
      "vocab { E/2 } structure over 2 { E = { (0,0) (0,1) }; }");
  auto phi = parse_formula("exists x. forall y. E(x,y)", M.vocab);
  auto report = minimal_cores(M, phi);
  CHECK(render_core_report(report) ==
        "VERDICT: PASS bound=1\n"
        "model:\n"
        "vocab { E/2 }\n"
        "structure over 2 { E = { (0,0) (0,1) }; }\n"
        "sentence: exists x. forall y. E(x,y)\n"
        "minimal core: { 0 }\n"
        "core bound: 1\n");
}

TEST_CASE("the empty core renders as empty braces") {
  auto M = parse_structure("vocab { P/1 } structure over 2 { P = { 0 1 }; }");
  auto phi = parse_formula("forall x. P(x)", M.vocab);
  auto report = minimal_cores(M, phi);
  CHECK(render_core_report(report) ==
        "VERDICT: PASS bound=0\n"
        "model:\n"
        "vocab { P/1 }\n"
        "structure over 2 { P = { 0 1 }; }\n"
        "sentence: forall x. P(x)\n"
        "minimal core: { }\n"
        "core bound: 0\n");
}

TEST_CASE("a witness report renders tuples and both flags") {
  auto M = parse_structure(
      "vocab { E/2 } structure over 2 { E = { (0,0) (0,1) }; }");
  auto phi = parse_formula("exists x. forall y. E(x,y)", M.vocab);
  auto report = witness_core_report(phi, 1, 1, M);
  CHECK(render_core_report(report) ==
        "VERDICT: PASS bound=1\n"
        "model:\n"
        "vocab { E/2 }\n"
        "structure over 2 { E = { (0,0) (0,1) }; }\n"
        "sentence: exists x. forall y. E(x,y)\n"
        "minimal core: { 0 }\n"
        "core bound: 1\n"
        "witness: (0)\n"
        "flag witness-sets-are-cores: yes\n"
        "flag cores-yield-witnesses: yes\n");
}

TEST_CASE("a false flag turns the report verdict into a failure") {
  auto M = parse_structure(
      "vocab { leq/2 } structure over 3 "
      "{ leq = { (0,0) (0,1) (0,2) (1,1) (1,2) (2,2) }; }");
  auto phi = parse_formula("exists x. forall y. leq(x,y)", M.vocab);
  auto report = witness_core_report(phi, 1, 2, M);
  REQUIRE(report.coresYieldWitnesses.has_value());
  REQUIRE(!*report.coresYieldWitnesses);
  auto text = render_core_report(report);
  CHECK(text.substr(0, text.find('\n')) == "VERDICT: FAIL bound=0");
  CHECK(text.find("flag witness-sets-are-cores: yes\n") != std::string::npos);
  CHECK(text.find("flag cores-yield-witnesses: no\n") != std::string::npos);
}

TEST_CASE("a nullary witness renders as empty parentheses") {
  auto M = parse_structure("vocab { P/1 } structure over 1 { P = { 0 }; }");
  auto phi = parse_formula("forall x. P(x)", M.vocab);
  auto report = witness_core_report(phi, 0, 1, M);
  auto text = render_core_report(report);
  CHECK(text.find("witness: ()\n") != std::string::npos);
}

TEST_CASE("case results render parameters checks and notes in order") {
  CaseResult c;
  c.caseName = "demo";
  c.parameters = {{"maxSize", "5"}, {"B", "2"}};
  c.checks.push_back({"subsets satisfying the sentence", "31", "31", true});
  c.checks.push_back({"core bound", "1", "1", true});
  c.analyticNotes.push_back("the unbounded half needs an infinite chain");
  CHECK(c.pass());
  CHECK(render_case_result(c) ==
        "VERDICT: PASS bound=2\n"
        "case: demo\n"
        "param: maxSize=5\n"
        "param: B=2\n"
        "check: subsets satisfying the sentence | expected=31 observed=31 | pass\n"
        "check: core bound | expected=1 observed=1 | pass\n"
        "note: the unbounded half needs an infinite chain\n");
  c.checks.push_back({"sweep", "pass", "counterexample at size 3", false});
  CHECK(!c.pass());
  CHECK(render_case_result(c) ==
        "VERDICT: FAIL bound=3\n"
        "case: demo\n"
        "param: maxSize=5\n"
        "param: B=2\n"
        "check: subsets satisfying the sentence | expected=31 observed=31 | pass\n"
        "check: core bound | expected=1 observed=1 | pass\n"
        "check: sweep | expected=pass observed=counterexample at size 3 | FAIL\n"
        "note: the unbounded half needs an infinite chain\n");
}

TEST_CASE("rendering is reproducible byte for byte") {
  auto v = parse_vocab("vocab { E/2 }");
  auto phi = parse_formula("exists x. forall y. E(x,y)", v);
  auto verdict = check_psi_equiv(v, phi, 1, 1, 3);
  CHECK(render_verdict(verdict) == render_verdict(verdict));
  auto M = parse_structure(
      "vocab { E/2 } structure over 2 { E = { (0,0) (0,1) }; }");
  auto report = witness_core_report(phi, 1, 1, M);
  CHECK(render_core_report(report) == render_core_report(report));
}
