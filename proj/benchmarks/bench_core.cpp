#include <benchmark/benchmark.h>

#include "twistlab/examples.hpp"
#include "twistlab/twist.hpp"

using namespace twistlab;

namespace {

Scalar q(const char* s) { return scalar_parse(s, FieldSpec::rational()); }

void BM_scalar_mul(benchmark::State& state) {
    FieldSpec f = FieldSpec::cyclotomic(12);
    Scalar a = Scalar::root_power(f, 5) + Scalar::from_int(f, 3);
    Scalar b = Scalar::root_power(f, 7) - Scalar::from_rational(f, mpq_class(2, 7));
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_scalar_mul);

void BM_elem_mul(benchmark::State& state) {
    PresPtr h = examples::sweedler_presentation();
    TensorElement r = examples::sweedler_rmatrix(h, q("2")).element;
    for (auto _ : state) benchmark::DoNotOptimize(elem_mul(r, r));
}
BENCHMARK(BM_elem_mul);

void BM_elem_inv(benchmark::State& state) {
    PresPtr h = examples::sweedler_presentation();
    TensorElement f = examples::sweedler_twist(h, q("3")).element;
    for (auto _ : state) benchmark::DoNotOptimize(elem_inv(f));
}
BENCHMARK(BM_elem_inv);

void BM_validate_sweedler(benchmark::State& state) {
    PresPtr h = examples::sweedler_presentation();
    for (auto _ : state) benchmark::DoNotOptimize(validate_bialgebra(h).ok());
}
BENCHMARK(BM_validate_sweedler);

void BM_brute_force_z2(benchmark::State& state) {
    PresPtr p = examples::group_algebra({2}, FieldSpec::rational());
    for (auto _ : state)
        benchmark::DoNotOptimize(examples::brute_force_rmatrices(p).members.size());
}
BENCHMARK(BM_brute_force_z2);

}  // namespace

BENCHMARK_MAIN();
