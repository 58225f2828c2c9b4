// Serial vs OpenMP timings for the main kernels.
#include "kmso21/decompose.hpp"
#include "kmso21/highest_weight.hpp"
#include "kmso21/unirep.hpp"

#include <benchmark/benchmark.h>

using namespace kmso21;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void root_spaces(benchmark::State& st) {
    for (auto _ : st) {
        AlgebraContext ctx(CartanMatrix::fib(), 0, mode(st));
        ctx.ensure_height(st.range(1));
        benchmark::DoNotOptimize(ctx.dim(RootVector({3, 4})));
    }
}
BENCHMARK(root_spaces)->ArgsProduct({{0, 1}, {7, 9}})->Unit(benchmark::kMillisecond);

void adjoint(benchmark::State& st) {
    AlgebraContext ctx(CartanMatrix::fib());
    auto t = build_so21(ctx, RootVector({2, 3}), Word{true, {1, 0, 1, 0, 1}});
    decompose_adjoint(t, 8, 4);  // warm the root-space cache
    for (auto _ : st) benchmark::DoNotOptimize(decompose_adjoint(t, 8, 4, mode(st)));
}
BENCHMARK(adjoint)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void weight_table(benchmark::State& st) {
    auto a = CartanMatrix::fib();
    auto lam = parse_highest_weight("fund1", 2);
    for (auto _ : st) {
        WeightTable t(a, lam, st.range(0));
        benchmark::DoNotOptimize(t.mult(RootVector({5, 5})));
    }
}
BENCHMARK(weight_table)->Arg(14)->Arg(24)->Unit(benchmark::kMillisecond);

void group_matrix(benchmark::State& st) {
    using namespace kmso21::unirep;
    GroupMatrixOptions o;
    o.range = 32;
    o.exec = mode(st);
    auto g = sl2_from_params({cplx(0.03, 0.02), 0.7});
    for (auto _ : st) benchmark::DoNotOptimize(unirep::group_matrix({Model::discrete, 2, 0, -1}, g, o));
}
BENCHMARK(group_matrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
