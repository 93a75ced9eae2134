#include "fopreserve/casebook.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "fopreserve/errors.hpp"
#include "fopreserve/eval.hpp"
#include "fopreserve/formula.hpp"
#include "fopreserve/modellab.hpp"
#include "fopreserve/relativize.hpp"
#include "fopreserve/structure.hpp"

namespace fopreserve {
namespace {

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string ratio_str(long long got, long long total) {
  return std::to_string(got) + "/" + std::to_string(total);
}

void add_check(CaseResult& r, std::string description, std::string expected,
               std::string observed) {
  CaseCheck c;
  c.description = std::move(description);
  c.expected = std::move(expected);
  c.observed = std::move(observed);
  c.pass = c.expected == c.observed;
  r.checks.push_back(std::move(c));
}

void add_param(CaseResult& r, const std::string& key, long long value) {
  r.parameters.emplace_back(key, std::to_string(value));
}

// Bounds are the documented budgets: below the minimum is a usage error,
// above the maximum would outgrow desk scale.
struct ParamSpec {
  const char* key;
  long long def;
  long long lo;
  long long hi;
};

CaseParams read_params(const CaseParams& given, std::initializer_list<ParamSpec> specs) {
  for (const auto& [key, value] : given) {
    (void)value;
    bool known = false;
    for (const auto& s : specs) known = known || key == s.key;
    if (!known) throw semantic_error("unknown parameter '" + key + "'");
  }
  CaseParams out;
  for (const auto& s : specs) {
    const auto it = given.find(s.key);
    const long long v = it == given.end() ? s.def : it->second;
    if (v < s.lo)
      throw semantic_error("parameter '" + std::string(s.key) + "' must be at least " +
                           std::to_string(s.lo));
    if (v > s.hi)
      throw budget_error("parameter '" + std::string(s.key) + "' exceeds the documented budget " +
                         std::to_string(s.hi));
    out[s.key] = v;
  }
  return out;
}

std::vector<std::string> numbered(const std::string& stem, int count, int first = 1) {
  std::vector<std::string> names;
  for (int i = 0; i < count; ++i) names.push_back(stem + std::to_string(first + i));
  return names;
}

FormulaPtr pred2(const std::string& name, const std::string& a, const std::string& b) {
  return mk_pred(name, {var(a), var(b)});
}

FormulaPtr pred1(const std::string& name, const std::string& a) {
  return mk_pred(name, {var(a)});
}

FormulaPtr neq(const std::string& a, const std::string& b) {
  return mk_not(mk_eq(var(a), var(b)));
}

// exists x1 (guard(1,x1) & exists x2 (x2 != x1 & guard(2,x2) & ...)): the
// guards sit inside their own quantifier so evaluation prunes per prefix.
FormulaPtr distinct_chain(const std::vector<std::string>& names,
                          const std::function<FormulaPtr(int)>& guard) {
  FormulaPtr body = nullptr;
  for (int i = static_cast<int>(names.size()) - 1; i >= 0; --i) {
    std::vector<FormulaPtr> parts;
    for (int j = 0; j < i; ++j) parts.push_back(neq(names[i], names[j]));
    parts.push_back(guard(i));
    if (body) parts.push_back(body);
    body = mk_exists(names[i], mk_and_all(parts));
  }
  return body;
}

// ---- undirected graphs (E stores both directed pairs) ----

Vocabulary graph_vocab() {
  Vocabulary v;
  v.predicates = {{"E", 2}};
  return v;
}

FormulaPtr undirected_deg0(const std::string& x) {
  return mk_forall("y", mk_not(pred2("E", x, "y")));
}

FormulaPtr undirected_deg_le1(const std::string& x) {
  return mk_forall(
      "y", mk_forall("z", mk_implies(mk_and(pred2("E", x, "y"), pred2("E", x, "z")),
                                     mk_eq(var("y"), var("z")))));
}

Structure paths_graph(const std::vector<int>& parts) {
  int total = 0;
  for (const int p : parts) total += p;
  Structure M = make_empty_structure(graph_vocab(), total);
  int base = 0;
  for (const int p : parts) {
    for (int i = 0; i + 1 < p; ++i) {
      M.set(0, {base + i, base + i + 1});
      M.set(0, {base + i + 1, base + i});
    }
    base += p;
  }
  return M;
}

int undirected_degree(const Structure& M, int x) {
  int d = 0;
  for (int y = 0; y < M.n; ++y)
    if (M.has(0, {x, y})) ++d;
  return d;
}

// Components of the subgraph induced by the mask, via neighbor walks.
int component_count(const Structure& M, std::uint64_t mask) {
  std::vector<int> label(M.n, -1);
  int parts = 0;
  for (int s = 0; s < M.n; ++s) {
    if (!((mask >> s) & 1) || label[s] >= 0) continue;
    ++parts;
    std::vector<int> stack{s};
    label[s] = parts;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w = 0; w < M.n; ++w) {
        if (!((mask >> w) & 1) || label[w] >= 0) continue;
        if (M.has(0, {u, w}) || M.has(0, {w, u})) {
          label[w] = parts;
          stack.push_back(w);
        }
      }
    }
  }
  return parts;
}

// 2*(isolated nodes) + (degree-one nodes) >= 2B, as a disjunction over how
// many of the 2B half-counts come from isolated nodes; the widest disjunct
// is tried last so dense graphs exit early.
FormulaPtr at_least_b_paths_sentence(int B) {
  std::vector<FormulaPtr> disjuncts;
  for (int p = B; p >= 0; --p) {
    const auto names = numbered("x", p + 2 * (B - p));
    disjuncts.push_back(distinct_chain(names, [&](int i) {
      return i < p ? undirected_deg0(names[i]) : undirected_deg_le1(names[i]);
    }));
  }
  return mk_or_all(disjuncts);
}

// Nonempty path-size multisets (nonincreasing) with the given node total.
void partitions_into(int total, int maxPart, std::vector<int>& current,
                     std::vector<std::vector<int>>& out) {
  if (total == 0) {
    out.push_back(current);
    return;
  }
  for (int p = std::min(total, maxPart); p >= 1; --p) {
    current.push_back(p);
    partitions_into(total - p, p, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<int>> all_path_multisets(int maxNodes) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  for (int t = 1; t <= maxNodes; ++t) partitions_into(t, t, current, out);
  return out;
}

// ---- the cases ----

CaseResult case_example3(const CaseParams& given) {
  const auto p = read_params(given, {{"maxSize", 5, 1, 10}});
  const int maxSize = static_cast<int>(p.at("maxSize"));

  CaseResult r;
  r.caseName = "example3";
  add_param(r, "maxSize", maxSize);

  const FormulaPtr phi =
      mk_exists("x", mk_forall("y", pred2("E", "x", "y")));
  Structure M = make_empty_structure(graph_vocab(), maxSize);
  for (int i = 0; i < maxSize; ++i)
    for (int j = i; j < maxSize; ++j) M.set(0, {i, j});

  const std::uint64_t full = (std::uint64_t(1) << maxSize) - 1;
  long long models = 0;
  for (std::uint64_t mask = 1; mask <= full; ++mask)
    if (eval_fo_restricted(M, phi, mask)) ++models;
  add_check(r, "nonempty induced substructures satisfying the sentence",
            ratio_str(full, full), ratio_str(models, full));

  int singletonCores = 0;
  for (int i = 0; i < maxSize; ++i)
    if (is_core(M, {i}, phi)) ++singletonCores;
  add_check(r, "singletons that are cores", ratio_str(maxSize, maxSize),
            ratio_str(singletonCores, maxSize));

  const CoreReport report = witness_core_report(phi, 1, 1, M);
  add_check(r, "smallest core is empty (every substructure keeps the sentence)", "0",
            std::to_string(report.coreBound));

  std::string witnesses;
  for (const auto& w : report.witnesses.value_or(std::vector<std::vector<int>>{})) {
    for (const int e : w) witnesses += (witnesses.empty() ? "" : ",") + std::to_string(e);
  }
  add_check(r, "witness elements for the existential prefix", "0", witnesses);
  add_check(r, "witness sets are cores", "true",
            bool_str(report.witnessSetsAreCores.value_or(false)));
  add_check(r, "small cores all reappear as witnesses", bool_str(maxSize == 1),
            bool_str(report.coresYieldWitnesses.value_or(true)));

  r.analyticNotes.push_back(
      "On the infinite structure whose universe is all integers with E as the order, any "
      "single point satisfies the relativized form, yet no integer is E-below every other, "
      "so the sentence fails; the step from the relativized form back to the sentence "
      "needs a finite universe.");
  return r;
}

CaseResult case_monadic_optimality(const CaseParams& given) {
  const auto p = read_params(given, {{"k", 1, 1, 3}, {"r", 2, 1, 4}});
  const int k = static_cast<int>(p.at("k"));
  const int r_ = static_cast<int>(p.at("r"));
  const int colours = 1 << k;
  const int size = r_ * colours;
  if (size > 12) throw budget_error("r * 2^k exceeds the documented budget 12");

  CaseResult result;
  result.caseName = "monadic_optimality";
  add_param(result, "k", k);
  add_param(result, "r", r_);
  add_param(result, "bound", size);

  Vocabulary vocab;
  for (int j = 0; j < k; ++j) vocab.predicates.emplace_back("P" + std::to_string(j), 1);

  const auto colour_of = [&](int c, const std::string& x) {
    std::vector<FormulaPtr> lits;
    for (int j = 0; j < k; ++j) {
      FormulaPtr atom = pred1("P" + std::to_string(j), x);
      lits.push_back((c >> j) & 1 ? atom : mk_not(atom));
    }
    return mk_and_all(lits);
  };

  // Some colour has at most r-1 elements: r-1 existentials catch them all,
  // the universal variable rules out an r-th.
  std::vector<FormulaPtr> disjuncts;
  for (int c = 0; c < colours; ++c) {
    const std::string last = "x" + std::to_string(r_);
    FormulaPtr miss = mk_not(colour_of(c, last));
    std::vector<FormulaPtr> apart;
    for (int i = 1; i < r_; ++i) apart.push_back(neq(last, "x" + std::to_string(i)));
    FormulaPtr body = apart.empty() ? miss : mk_implies(mk_and_all(apart), miss);
    body = mk_forall(last, body);
    for (int i = r_ - 1; i >= 1; --i) body = mk_exists("x" + std::to_string(i), body);
    disjuncts.push_back(body);
  }
  const FormulaPtr phi = mk_or_all(disjuncts);

  Structure M = make_empty_structure(vocab, size);
  for (int e = 0; e < size; ++e) {
    const int c = e / r_;
    for (int j = 0; j < k; ++j)
      if ((c >> j) & 1) M.set(j, {e});
  }

  add_check(result, "the r-per-colour structure satisfies the sentence", "false",
            bool_str(eval_fo(M, phi)));
  add_check(result,
            "it satisfies the " + std::to_string(size - 1) +
                "-variable universal relativization",
            "true", bool_str(psi_holds(M, phi, 0, size - 1)));
  add_check(result,
            "it satisfies the " + std::to_string(size) +
                "-variable universal relativization",
            "false", bool_str(psi_holds(M, phi, 0, size)));
  if (size - 1 <= 4)
    add_check(result, "the materialized relativized formula agrees", "true",
              bool_str(eval_fo(M, build_psi(vocab, phi, 0, size - 1))));
  return result;
}

CaseResult case_finite_failure_chi(const CaseParams& given) {
  const auto p = read_params(given, {{"B", 0, 0, 2}, {"n", 1, 1, 2}});
  const int B = static_cast<int>(p.at("B"));
  const int n = static_cast<int>(p.at("n"));
  const int N = B + 2 * n + 4;
  const int hole = B + n + 1;

  CaseResult r;
  r.caseName = "finite_failure_chi";
  add_param(r, "B", B);
  add_param(r, "n", n);
  add_param(r, "universeSize", N);
  add_param(r, "deletedRow", hole);

  Vocabulary vocab;
  vocab.predicates = {{"leq", 2}, {"S", 2}, {"U", 1}, {"V", 1}};

  // Total preorder.
  const FormulaPtr chi1 = mk_forall(
      "x", mk_forall(
               "y", mk_forall(
                        "z", mk_and_all({pred2("leq", "x", "x"),
                                         mk_or(pred2("leq", "x", "y"), pred2("leq", "y", "x")),
                                         mk_implies(mk_and(pred2("leq", "x", "y"),
                                                           pred2("leq", "y", "z")),
                                                    pred2("leq", "x", "z"))}))));
  // S edges point to immediate strict successors.
  const FormulaPtr chi2 = mk_forall(
      "x", mk_forall("y", mk_implies(pred2("S", "x", "y"),
                                     mk_forall("z", mk_implies(mk_and(pred2("leq", "x", "z"),
                                                                      neq("x", "z")),
                                                               pred2("leq", "y", "z"))))));
  // x1 is the minimum, x2 the maximum, everything strictly between is marked
  // U, z differs from the maximum and z has no S edge at all.
  const auto chi4 = [&](const std::string& x1, const std::string& x2) {
    return mk_forall(
        "y", mk_and_all({pred2("leq", x1, "y"), pred2("leq", "y", x2),
                         mk_implies(mk_and(neq("y", x1), neq("y", x2)), pred1("U", "y")),
                         neq("zz", x2), mk_not(pred2("S", "zz", "y"))}));
  };
  const FormulaPtr chi3 = mk_exists(
      "zz", mk_forall("x1", mk_forall("x2", mk_implies(mk_and_all({mk_not(pred1("U", "x1")),
                                                                   mk_not(pred1("U", "x2")),
                                                                   neq("x1", "x2")}),
                                                       mk_or(chi4("x1", "x2"),
                                                             chi4("x2", "x1"))))));
  FormulaPtr count;
  if (B == 0) {
    count = mk_forall("w", mk_not(pred1("V", "w")));
  } else {
    const auto vs = numbered("v", B);
    std::vector<FormulaPtr> eqs;
    for (const auto& v : vs) eqs.push_back(mk_eq(var("w"), var(v)));
    FormulaPtr closed = mk_forall("w", mk_implies(pred1("V", "w"), mk_or_all(eqs)));
    // The closure clause rides inside the innermost existential scope.
    count = distinct_chain(vs, [&](int i) {
      return i + 1 == B ? mk_and(pred1("V", vs[i]), closed) : pred1("V", vs[i]);
    });
  }
  const FormulaPtr vInsideU =
      mk_forall("w", mk_implies(pred1("V", "w"), pred1("U", "w")));
  const FormulaPtr phi = mk_and_all({chi1, chi2, chi3, count, vInsideU});

  Structure M = make_empty_structure(vocab, N);
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) M.set(0, {i, j});
  for (int i = 0; i + 1 < N; ++i) M.set(1, {i, i + 1});
  for (int i = 1; i <= N - 2; ++i) M.set(2, {i});
  for (int i = 1; i <= B; ++i) M.set(3, {i});

  Structure M1 = M;
  for (int j = 0; j < N; ++j) M1.set(1, {hole, j}, false);

  add_check(r, "the complete structure satisfies the sentence", "false",
            bool_str(eval_fo(M, phi)));
  add_check(r, "the structure with the deleted successor row satisfies it", "true",
            bool_str(eval_fo(M1, phi)));

  bool diffOnlyHole = M.n == M1.n;
  bool sawDiff = false;
  for (int i = 0; i < N && diffOnlyHole; ++i) {
    for (int j = 0; j < N && diffOnlyHole; ++j) {
      if (M.has(0, {i, j}) != M1.has(0, {i, j})) diffOnlyHole = false;
      if (M.has(1, {i, j}) != M1.has(1, {i, j})) {
        sawDiff = true;
        if (i != hole) diffOnlyHole = false;
      }
      if (M1.has(1, {hole, j})) diffOnlyHole = false;
    }
    if (M.has(2, {i}) != M1.has(2, {i}) || M.has(3, {i}) != M1.has(3, {i}))
      diffOnlyHole = false;
  }
  add_check(r, "the two structures differ exactly on the deleted successor row", "true",
            bool_str(diffOnlyHole && sawDiff));

  // Every n-tuple over the complete structure matches a tuple over the
  // edited one: the map fixing the marked witnesses and sending the tuple
  // pointwise is an isomorphism of the induced pieces.
  std::vector<int> abar;
  for (int i = 1; i <= B; ++i) abar.push_back(i);
  long long tuples = 1;
  for (int i = 0; i < n; ++i) tuples *= N;
  long long matched = 0;
  std::vector<int> b(n, 0);
  const auto preserved = [&](const std::vector<std::pair<int, int>>& f) {
    for (const auto& [u, fu] : f) {
      if (M.has(2, {u}) != M1.has(2, {fu})) return false;
      if (M.has(3, {u}) != M1.has(3, {fu})) return false;
      for (const auto& [v, fv] : f) {
        if (M.has(0, {u, v}) != M1.has(0, {fu, fv})) return false;
        if (M.has(1, {u, v}) != M1.has(1, {fu, fv})) return false;
      }
    }
    return true;
  };
  for (long long t = 0; t < tuples; ++t) {
    bool found = false;
    std::vector<int> d(n, 0);
    for (long long s = 0; s < tuples && !found; ++s) {
      std::vector<std::pair<int, int>> f;
      bool ok = true;
      const auto map_to = [&](int u, int fu) {
        for (const auto& [a, fa] : f) {
          if (a == u) return fa == fu;
          if (fa == fu) return false;
        }
        f.emplace_back(u, fu);
        return true;
      };
      for (const int a : abar) ok = ok && map_to(a, a);
      for (int i = 0; i < n && ok; ++i) ok = map_to(b[i], d[i]);
      if (ok && preserved(f)) {
        std::vector<int> X = abar, Y = abar;
        X.insert(X.end(), b.begin(), b.end());
        Y.insert(Y.end(), d.begin(), d.end());
        found = isomorphic(induced(M, X).structure, induced(M1, Y).structure);
      }
      for (int i = 0; i < n; ++i) {
        if (++d[i] < N) break;
        d[i] = 0;
      }
    }
    if (found) ++matched;
    for (int i = 0; i < n; ++i) {
      if (++b[i] < N) break;
      b[i] = 0;
    }
  }
  add_check(r, "witness extension tuples with an isomorphic counterpart",
            ratio_str(tuples, tuples), ratio_str(matched, tuples));

  add_check(r, B == 0 ? "the empty set is a core of the edited structure"
                      : "the marked elements form a core of the edited structure",
            "true", bool_str(is_core(M1, abar, phi)));
  if (B > 0) {
    int broken = 0;
    for (int skip = 0; skip < B; ++skip) {
      std::vector<int> c;
      for (int i = 0; i < B; ++i)
        if (i != skip) c.push_back(abar[i]);
      if (!is_core(M1, c, phi)) ++broken;
    }
    add_check(r, "dropping any marked element breaks the core property", ratio_str(B, B),
              ratio_str(broken, B));
  }

  r.analyticNotes.push_back(
      "The edited structure empties one successor row of the complete one; it is a "
      "weakening, not an induced substructure, so both truth values are recorded without "
      "asserting a substructure relation.");
  r.analyticNotes.push_back(
      "Schema behind the finite checks: a proposed existential-universal equivalent with n "
      "universal variables would hold on the edited structure, its witnesses must be the "
      "marked elements, and the tuple-matching check transfers every matrix evaluation to "
      "the complete structure, which falsifies the sentence; no fixed bound survives every "
      "n, so no such equivalent exists.");
  return r;
}

CaseResult case_undirected_paths(const CaseParams& given) {
  const auto p = read_params(given, {{"B", 2, 2, 4}, {"maxNodes", 8, 1, 9}});
  const int B = static_cast<int>(p.at("B"));
  const int maxNodes = static_cast<int>(p.at("maxNodes"));

  CaseResult r;
  r.caseName = "undirected_paths";
  add_param(r, "B", B);
  add_param(r, "maxNodes", maxNodes);

  const FormulaPtr phi = at_least_b_paths_sentence(B);
  const auto shapes = all_path_multisets(maxNodes);

  long long censusAgrees = 0, sentenceAgrees = 0;
  long long withEnough = 0, endpointCores = 0;
  for (const auto& shape : shapes) {
    const Structure M = paths_graph(shape);
    int deg0 = 0, deg1 = 0;
    for (int x = 0; x < M.n; ++x) {
      const int d = undirected_degree(M, x);
      if (d == 0) ++deg0;
      if (d == 1) ++deg1;
    }
    const bool d1 = static_cast<int>(shape.size()) >= B;
    const bool d2 = 2 * deg0 + deg1 >= 2 * B;
    if (d1 == d2) ++censusAgrees;
    if (eval_fo(M, phi) == d2) ++sentenceAgrees;
    if (d1) {
      ++withEnough;
      std::vector<int> endpoints;
      int base = 0;
      for (int i = 0; i < B; ++i) {
        endpoints.push_back(base);
        base += shape[i];
      }
      if (is_core(M, endpoints, phi)) ++endpointCores;
    }
  }
  const long long total = static_cast<long long>(shapes.size());
  add_check(r, "instances where the path count agrees with the degree census",
            ratio_str(total, total), ratio_str(censusAgrees, total));
  add_check(r, "instances where the sentence agrees with the degree census",
            ratio_str(total, total), ratio_str(sentenceAgrees, total));
  add_check(r, "instances with enough paths where one endpoint per path is a core",
            ratio_str(withEnough, withEnough), ratio_str(endpointCores, withEnough));

  add_check(r, "a single isolated node counts as one path", "true",
            bool_str(component_count(paths_graph({1}), 1) == 1 &&
                     eval_fo(paths_graph({1}), at_least_b_paths_sentence(1))));
  add_check(r, "two single-edge paths fall short of three", "false",
            bool_str(eval_fo(paths_graph({2, 2}), at_least_b_paths_sentence(3))));

  r.analyticNotes.push_back(
      "The inexpressibility half needs unboundedly long paths: for any candidate "
      "existential-universal form with n universal variables, a collection of about half "
      "as many sufficiently long paths and one with the full count cannot be told apart, "
      "because witness points transfer along distance-preserving placements.");
  r.analyticNotes.push_back(
      "Over disjoint unions of paths the degrees are bounded, so preservation under "
      "substructures does hold for every sentence; the failure above is only about the "
      "witness budget B.");
  return r;
}

CaseResult case_xi_not_psc(const CaseParams& given) {
  const auto p = read_params(given, {{"B", 4, 3, 5}});
  const int B = static_cast<int>(p.at("B"));

  CaseResult r;
  r.caseName = "xi_not_psc";
  add_param(r, "B", B);
  add_param(r, "nodes", B + 1);

  const auto deg0Names = numbered("x", B);
  const auto lowNames = numbered("x", B + 1);
  const FormulaPtr xi = mk_or(
      distinct_chain(deg0Names, [&](int i) { return undirected_deg0(deg0Names[i]); }),
      distinct_chain(lowNames, [&](int i) { return undirected_deg_le1(lowNames[i]); }));

  std::vector<int> shape = {2, 2};
  for (int i = 0; i < B - 3; ++i) shape.push_back(1);
  const Structure M = paths_graph(shape);

  int lowDegree = 0;
  for (int x = 0; x < M.n; ++x)
    if (undirected_degree(M, x) <= 1) ++lowDegree;
  add_check(r, "nodes of degree at most one", std::to_string(B + 1),
            std::to_string(lowDegree));
  add_check(r, "the structure satisfies the sentence", "true", bool_str(eval_fo(M, xi)));

  const CoreReport cores = minimal_cores(M, xi);
  add_check(r, "smallest core size from the exhaustive subset sweep", std::to_string(B + 1),
            std::to_string(cores.coreBound));
  add_check(r, "no core fits within the B-element budget", "true",
            bool_str(cores.coreBound > B));

  r.analyticNotes.push_back(
      "The sentence uses B+1 existential witnesses, one more than the budget; at B = 2 it "
      "coincides with the at-least-two-paths condition, and membership in the "
      "bounded-core class first fails at B = 3.");
  return r;
}

CaseResult case_directed_paths(const CaseParams& given) {
  const auto p = read_params(
      given, {{"B", 2, 1, 3}, {"n", 2, 1, 3}, {"L", 10, 2, 31}, {"samples", 200, 1, 2000}});
  const int B = static_cast<int>(p.at("B"));
  const int n = static_cast<int>(p.at("n"));
  const int L = static_cast<int>(p.at("L"));
  const int samples = static_cast<int>(p.at("samples"));
  if (L < B * n) throw semantic_error("L must be at least B*n");
  if ((B - 1) * (2 * n + 2) > 2 * L)
    throw semantic_error("witness spacing (B-1)*(2n+2) does not fit on a path of length 2L");

  CaseResult r;
  r.caseName = "directed_paths_relativization";
  add_param(r, "B", B);
  add_param(r, "n", n);
  add_param(r, "L", L);
  add_param(r, "samples", samples);

  const int nodes = 2 * L + 1;
  Structure M = make_empty_structure(graph_vocab(), nodes);
  for (int i = 0; i + 1 < nodes; ++i) M.set(0, {i, i + 1});

  // Total degree at most one, counting neighbors in either direction.
  const auto lowdeg = [&](const std::string& x) {
    const auto nbr = [&](const std::string& other) {
      return mk_or(pred2("E", x, other), pred2("E", other, x));
    };
    return mk_forall("y", mk_forall("z", mk_implies(mk_and(nbr("y"), nbr("z")),
                                                    mk_eq(var("y"), var("z")))));
  };
  const auto names = numbered("x", B);
  const FormulaPtr phi = distinct_chain(names, [&](int i) { return lowdeg(names[i]); });

  std::vector<int> abar;
  std::string spots;
  for (int i = 0; i < B; ++i) {
    abar.push_back(i * (2 * n + 2));
    spots += (spots.empty() ? "" : ",") + std::to_string(abar.back());
  }
  r.parameters.emplace_back("witnessPositions", spots);

  bool spaced = true;
  for (int i = 0; i + 1 < B; ++i) spaced = spaced && abar[i + 1] - abar[i] >= 2 * n;
  add_check(r, "witness points are pairwise at least 2n apart", "true", bool_str(spaced));

  std::mt19937_64 rng(0x20260818ULL);
  std::uniform_int_distribution<int> pick(0, nodes - 1);
  int split = 0, satisfied = 0;
  for (int s = 0; s < samples; ++s) {
    std::uint64_t mask = 0;
    for (const int a : abar) mask |= std::uint64_t(1) << a;
    for (int i = 0; i < n; ++i) mask |= std::uint64_t(1) << pick(rng);
    if (component_count(M, mask) >= B) ++split;
    if (eval_fo_restricted(M, phi, mask)) ++satisfied;
  }
  add_check(r, "sampled witness extensions splitting into at least B pieces",
            ratio_str(samples, samples), ratio_str(split, samples));
  add_check(r, "sampled induced pieces satisfying the low-degree sentence",
            ratio_str(samples, samples), ratio_str(satisfied, samples));

  int lowDegreeFull = 0;
  for (int x = 0; x < nodes; ++x) {
    int d = 0;
    for (int y = 0; y < nodes; ++y)
      if (M.has(0, {x, y}) || M.has(0, {y, x})) ++d;
    if (d <= 1) ++lowDegreeFull;
  }
  add_check(r, "low-degree points of the full path (its endpoints)", "2",
            std::to_string(lowDegreeFull));
  add_check(r, "the full path satisfies the sentence exactly when B <= 2",
            bool_str(B <= 2), bool_str(eval_fo(M, phi)));

  r.analyticNotes.push_back(
      "On the two-way infinite path every point has two neighbors, so the sentence fails "
      "there while every witness-plus-n-tuple induced piece satisfies it; the relativized "
      "form then holds where the sentence does not. Finite paths cannot show this because "
      "their endpoints have one neighbor.");
  r.analyticNotes.push_back(
      "Witnesses sit 2n+2 apart rather than exactly 2n: a gap of 2n can be bridged by the "
      "n extra points when n = 1, while 2n+1 interior points per gap keep the pieces "
      "disconnected for every n.");
  return r;
}

CaseResult case_ea_bound(const CaseParams& given) {
  const auto p = read_params(given, {{"k", 2, 1, 2}});
  const int k = static_cast<int>(p.at("k"));
  const int bound = 1 << k;

  CaseResult r;
  r.caseName = "ea_bound";
  add_param(r, "k", k);
  add_param(r, "bound", bound);

  std::vector<std::string> preds;
  Vocabulary vocab;
  for (int j = 0; j < k; ++j) {
    preds.push_back("P" + std::to_string(j));
    vocab.predicates.emplace_back(preds.back(), 1);
  }
  const FormulaPtr phi = type_cycle_sentence(preds);

  const Verdict ps = ps_check(vocab, phi, 5);
  add_check(r, "preservation sweep up to size 5", "pass",
            ps.status == VerdictStatus::PassUpTo ? "pass" : "counterexample");

  const Verdict equiv = check_equiv_upto(vocab, phi, build_psi(vocab, phi, 0, bound), 5);
  add_check(r,
            "equivalence with the " + std::to_string(bound) +
                "-variable universal relativization up to size 5",
            "pass", equiv.status == VerdictStatus::PassUpTo ? "pass" : "counterexample");

  Structure M = make_empty_structure(vocab, bound);
  for (int e = 0; e < bound; ++e)
    for (int j = 0; j < k; ++j)
      if ((e >> j) & 1) M.set(j, {e});
  add_check(r, "one element per 1-type satisfies the sentence", "false",
            bool_str(eval_fo(M, phi)));
  add_check(r,
            "it satisfies the " + std::to_string(bound - 1) +
                "-variable universal relativization",
            "true", bool_str(eval_fo(M, build_psi(vocab, phi, 0, bound - 1))));

  r.analyticNotes.push_back(
      "The sweep certifies preservation and the equivalence only up to size 5; the general "
      "argument glues fresh elements onto arbitrarily large structures by copying 1-types "
      "and 2-types, which no bounded enumeration exhibits.");
  return r;
}

}  // namespace

std::vector<std::string> case_names() {
  return {"example3",    "monadic_optimality",
          "finite_failure_chi", "undirected_paths",
          "xi_not_psc",  "directed_paths_relativization",
          "ea_bound"};
}

CaseResult run_case(const std::string& name, const CaseParams& params) {
  if (name == "example3") return case_example3(params);
  if (name == "monadic_optimality") return case_monadic_optimality(params);
  if (name == "finite_failure_chi") return case_finite_failure_chi(params);
  if (name == "undirected_paths") return case_undirected_paths(params);
  if (name == "xi_not_psc") return case_xi_not_psc(params);
  if (name == "directed_paths_relativization") return case_directed_paths(params);
  if (name == "ea_bound") return case_ea_bound(params);
  throw semantic_error("unknown case '" + name + "'");
}

}  // namespace fopreserve
