#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "fopreserve/casebook.hpp"
#include "fopreserve/errors.hpp"
#include "fopreserve/report.hpp"

using namespace fopreserve;

namespace {

const CaseCheck& find_check(const CaseResult& r, const std::string& needle) {
  for (const auto& c : r.checks)
    if (c.description.find(needle) != std::string::npos) return c;
  INFO("no check mentions: " << needle);
  REQUIRE(false);
  static const CaseCheck none;
  return none;
}

}  // namespace

TEST_CASE("the catalog lists every case in order") {
  const std::vector<std::string> expected = {
      "example3",    "monadic_optimality",
      "finite_failure_chi", "undirected_paths",
      "xi_not_psc",  "directed_paths_relativization",
      "ea_bound"};
  CHECK(case_names() == expected);
}

TEST_CASE("every case passes at its default parameters") {
  for (const auto& name : case_names()) {
    const CaseResult r = run_case(name);
    INFO(name);
    for (const auto& c : r.checks) {
      INFO(c.description << ": expected " << c.expected << ", observed " << c.observed);
      CHECK(c.pass);
    }
    CHECK(r.pass());
    const bool all = std::all_of(r.checks.begin(), r.checks.end(),
                                 [](const CaseCheck& c) { return c.pass; });
    CHECK(r.pass() == all);
  }
}

TEST_CASE("the dominating-element case reports the expected facts") {
  const CaseResult r = run_case("example3", {{"maxSize", 5}});
  REQUIRE(r.pass());
  REQUIRE(r.checks.size() == 6);
  CHECK(r.checks[0].observed == "31/31");
  CHECK(r.checks[1].observed == "5/5");
  CHECK(find_check(r, "smallest core is empty").observed == "0");
  CHECK(find_check(r, "witness elements").observed == "0");
  CHECK(find_check(r, "witness sets are cores").observed == "true");
  CHECK(find_check(r, "reappear as witnesses").observed == "false");
  CHECK(r.analyticNotes.size() == 1);
}

TEST_CASE("on a one-element segment every small core is a witness set") {
  const CaseResult r = run_case("example3", {{"maxSize", 1}});
  REQUIRE(r.pass());
  CHECK(find_check(r, "reappear as witnesses").expected == "true");
}

TEST_CASE("the colour-counting case pins the tight universal bound") {
  const CaseResult r = run_case("monadic_optimality", {{"k", 1}, {"r", 2}});
  REQUIRE(r.pass());
  REQUIRE(r.checks.size() == 4);
  CHECK(find_check(r, "satisfies the sentence").expected == "false");
  CHECK(find_check(r, "3-variable universal relativization").expected == "true");
  CHECK(find_check(r, "4-variable universal relativization").expected == "false");
  CHECK(find_check(r, "materialized").observed == "true");
}

TEST_CASE("the colour-counting case scales to a degenerate witness count") {
  const CaseResult r = run_case("monadic_optimality", {{"k", 2}, {"r", 1}});
  CHECK(r.pass());
}

TEST_CASE("the deleted-successor-row case passes with and without markers") {
  const CaseResult small = run_case("finite_failure_chi", {{"B", 0}, {"n", 1}});
  REQUIRE(small.pass());
  CHECK(small.checks.size() == 5);
  CHECK(find_check(small, "witness extension").observed == "6/6");

  const CaseResult marked = run_case("finite_failure_chi", {{"B", 1}, {"n", 1}});
  REQUIRE(marked.pass());
  CHECK(marked.checks.size() == 6);
  CHECK(find_check(marked, "dropping any marked element").observed == "1/1");
}

TEST_CASE("the path-counting case passes at the documented budgets") {
  for (int B = 2; B <= 3; ++B) {
    const CaseResult r = run_case("undirected_paths", {{"B", B}, {"maxNodes", 8}});
    INFO("B = " << B);
    CHECK(r.pass());
  }
}

TEST_CASE("the over-budget witness case reports the larger core bound") {
  const CaseResult r = run_case("xi_not_psc", {{"B", 4}});
  REQUIRE(r.pass());
  CHECK(find_check(r, "smallest core size").observed == "5");
  CHECK(find_check(r, "B-element budget").observed == "true");
}

TEST_CASE("the long-path sampling case passes at its defaults") {
  const CaseResult r = run_case("directed_paths_relativization");
  REQUIRE(r.pass());
  CHECK(find_check(r, "low-degree points").observed == "2");
}

TEST_CASE("the one-type case certifies both bound directions") {
  for (int k = 1; k <= 2; ++k) {
    const CaseResult r = run_case("ea_bound", {{"k", k}});
    INFO("k = " << k);
    CHECK(r.pass());
  }
}

TEST_CASE("unknown cases and parameters are rejected") {
  CHECK_THROWS_AS(run_case("no_such_case"), semantic_error);
  CHECK_THROWS_AS(run_case("example3", {{"size", 3}}), semantic_error);
  CHECK_THROWS_AS(run_case("xi_not_psc", {{"B", 2}}), semantic_error);
  CHECK_THROWS_AS(run_case("directed_paths_relativization", {{"B", 3}, {"n", 3}, {"L", 8}}),
                  semantic_error);
  CHECK_THROWS_AS(run_case("directed_paths_relativization", {{"B", 3}, {"n", 1}, {"L", 3}}),
                  semantic_error);
}

TEST_CASE("budgets above the documented bounds are refused") {
  CHECK_THROWS_AS(run_case("example3", {{"maxSize", 11}}), budget_error);
  CHECK_THROWS_AS(run_case("monadic_optimality", {{"k", 3}, {"r", 4}}), budget_error);
  CHECK_THROWS_AS(run_case("ea_bound", {{"k", 3}}), budget_error);
}

TEST_CASE("case reports render byte-identically on repeated runs") {
  const std::string once = render_case_result(run_case("example3", {{"maxSize", 4}}));
  const std::string twice = render_case_result(run_case("example3", {{"maxSize", 4}}));
  CHECK(once == twice);
  CHECK(once.substr(0, 20) == "VERDICT: PASS bound=");
}
