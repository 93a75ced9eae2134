#include <benchmark/benchmark.h>

#include "fopreserve/eval.hpp"
#include "fopreserve/parser.hpp"

namespace {

using namespace fopreserve;

Structure dense_graph(int n) {
  auto v = parse_vocab("vocab { E/2; P/1 }");
  Structure M = make_empty_structure(v, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((i * 7 + j * 3) % 5 != 0) M.set(0, {i, j});
  for (int i = 0; i < n; i += 2) M.set(1, {i});
  return M;
}

void bm_eval_two_quantifiers(benchmark::State& state) {
  auto M = dense_graph(static_cast<int>(state.range(0)));
  auto f = parse_formula("exists x. forall y. (E(x,y) | P(y))", M.vocab);
  for (auto _ : state) benchmark::DoNotOptimize(eval_fo(M, f));
}
BENCHMARK(bm_eval_two_quantifiers)->Arg(8)->Arg(16)->Arg(32);

void bm_parse_print_roundtrip(benchmark::State& state) {
  auto v = parse_vocab("vocab { E/2; P/1; c }");
  const std::string text =
      "exists x. forall y. (E(x,y) -> (P(y) | ~(y = c) & exists u. E(u,y)))";
  for (auto _ : state) {
    auto f = parse_formula(text, v);
    benchmark::DoNotOptimize(print_formula(f));
  }
}
BENCHMARK(bm_parse_print_roundtrip);

}  // namespace

BENCHMARK_MAIN();
