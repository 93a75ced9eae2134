#include "fopreserve/report.hpp"

#include <string>

#include "fopreserve/formula.hpp"
#include "fopreserve/structure.hpp"

namespace fopreserve {

namespace {

std::string verdict_line(bool pass, int bound) {
  return std::string("VERDICT: ") + (pass ? "PASS" : "FAIL") +
         " bound=" + std::to_string(bound) + "\n";
}

std::string set_text(const std::vector<int>& xs) {
  std::string out = "{ ";
  for (int x : xs) {
    out += std::to_string(x);
    out += ' ';
  }
  out += '}';
  return out;
}

std::string tuple_text(const std::vector<int>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  out += ')';
  return out;
}

}  // namespace

bool CaseResult::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string render_verdict(const Verdict& v) {
  std::string out =
      verdict_line(v.status == VerdictStatus::PassUpTo, v.boundChecked);
  if (v.witness) {
    const CounterWitness& w = *v.witness;
    if (w.model) out += "counterexample model:\n" + print_structure(*w.model) + "\n";
    if (w.subset) out += "substructure: " + set_text(*w.subset) + "\n";
    if (w.cover)
      for (const auto& member : *w.cover)
        out += "cover member: " + set_text(member) + "\n";
    if (w.word)
      out += "word: " + (w.word->empty() ? std::string("(empty)") : *w.word) + "\n";
    if (w.lhs.has_value())
      out += std::string("lhs: ") + (*w.lhs ? "true" : "false") + "\n";
    if (w.rhs.has_value())
      out += std::string("rhs: ") + (*w.rhs ? "true" : "false") + "\n";
    if (!w.note.empty()) out += "note: " + w.note + "\n";
  }
  return out;
}

std::string render_core_report(const CoreReport& r) {
  const bool pass =
      !(r.witnessSetsAreCores.has_value() && !*r.witnessSetsAreCores) &&
      !(r.coresYieldWitnesses.has_value() && !*r.coresYieldWitnesses);
  std::string out = verdict_line(pass, r.coreBound);
  out += "model:\n" + print_structure(r.model) + "\n";
  out += "sentence: " + print_formula(r.sentence) + "\n";
  for (const auto& core : r.minimalCores)
    out += "minimal core: " + set_text(core) + "\n";
  out += "core bound: " + std::to_string(r.coreBound) + "\n";
  if (r.witnesses)
    for (const auto& t : *r.witnesses) out += "witness: " + tuple_text(t) + "\n";
  if (r.witnessSetsAreCores.has_value())
    out += std::string("flag witness-sets-are-cores: ") +
           (*r.witnessSetsAreCores ? "yes" : "no") + "\n";
  if (r.coresYieldWitnesses.has_value())
    out += std::string("flag cores-yield-witnesses: ") +
           (*r.coresYieldWitnesses ? "yes" : "no") + "\n";
  return out;
}

std::string render_case_result(const CaseResult& c) {
  std::string out = verdict_line(c.pass(), static_cast<int>(c.checks.size()));
  out += "case: " + c.caseName + "\n";
  for (const auto& [key, value] : c.parameters)
    out += "param: " + key + "=" + value + "\n";
  for (const auto& chk : c.checks)
    out += "check: " + chk.description + " | expected=" + chk.expected +
           " observed=" + chk.observed + (chk.pass ? " | pass\n" : " | FAIL\n");
  for (const auto& note : c.analyticNotes) out += "note: " + note + "\n";
  return out;
}

}  // namespace fopreserve
