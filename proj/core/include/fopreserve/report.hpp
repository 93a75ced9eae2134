#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fopreserve/modellab.hpp"

namespace fopreserve {

// One machine-checked fact inside a named case.
struct CaseCheck {
  std::string description;
  std::string expected;
  std::string observed;
  bool pass = false;
};

// Outcome of a scripted case. Analytic notes document claims that need
// infinite models; they are quoted, never computed, and do not affect pass().
struct CaseResult {
  std::string caseName;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<CaseCheck> checks;
  std::vector<std::string> analyticNotes;

  bool pass() const;
};

// Line-oriented text reports with fixed field order; identical inputs render
// to identical bytes. Every report opens with "VERDICT: PASS|FAIL bound=<n>".
// For verdicts n is the bound checked; for core reports it is the core bound
// and FAIL means some computed flag is "no"; for cases it is the number of
// checks and FAIL means some check failed.
std::string render_verdict(const Verdict& v);
std::string render_core_report(const CoreReport& r);
std::string render_case_result(const CaseResult& c);

}  // namespace fopreserve
