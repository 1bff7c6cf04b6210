// Serial reference vs OpenMP kernels, and the serial vs parallel security sweep.

#include <benchmark/benchmark.h>

#include <vector>

#include "qnd/kernels.hpp"
#include "qnd/qsatm.hpp"
#include "qnd/random.hpp"

namespace {

qnd::StateVector bench_state(int n) {
    qnd::Rng rng(42);
    return qnd::random_state(n, rng);
}

void BM_HadamardReference(benchmark::State &st) {
    const int n = static_cast<int>(st.range(0));
    auto s = bench_state(n);
    for (auto _ : st) {
        for (int q = 0; q < n; ++q) {
            qnd::reference::hadamard(s.mutable_amplitudes(), n, q, qnd::HadamardConvention::Paper);
        }
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    st.SetItemsProcessed(st.iterations() * n * static_cast<std::int64_t>(s.dimension()));
}

void BM_HadamardOmp(benchmark::State &st) {
    const int n = static_cast<int>(st.range(0));
    auto s = bench_state(n);
    for (auto _ : st) {
        for (int q = 0; q < n; ++q) {
            qnd::kernels::hadamard(s.mutable_amplitudes(), n, q, qnd::HadamardConvention::Paper);
        }
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    st.SetItemsProcessed(st.iterations() * n * static_cast<std::int64_t>(s.dimension()));
}

void BM_CnotReference(benchmark::State &st) {
    const int n = static_cast<int>(st.range(0));
    auto s = bench_state(n);
    for (auto _ : st) {
        for (int q = 0; q + 1 < n; ++q) {
            qnd::reference::cnot(s.mutable_amplitudes(), n, q, q + 1);
        }
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
}

void BM_CnotOmp(benchmark::State &st) {
    const int n = static_cast<int>(st.range(0));
    auto s = bench_state(n);
    for (auto _ : st) {
        for (int q = 0; q + 1 < n; ++q) {
            qnd::kernels::cnot(s.mutable_amplitudes(), n, q, q + 1);
        }
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
}

qnd::SweepConfig sweep_config() {
    qnd::SweepConfig c;
    c.attacker = qnd::AttackerModel::fresh_zero();
    c.trials = 20000;
    c.seed = 1;
    return c;
}

void BM_SweepReference(benchmark::State &st) {
    const std::vector<int> ns{static_cast<int>(st.range(0))};
    const auto config = sweep_config();
    for (auto _ : st) {
        benchmark::DoNotOptimize(qnd::reference::security_sweep(ns, config));
    }
}

void BM_SweepOmp(benchmark::State &st) {
    const std::vector<int> ns{static_cast<int>(st.range(0))};
    const auto config = sweep_config();
    for (auto _ : st) {
        benchmark::DoNotOptimize(qnd::security_sweep(ns, config));
    }
}

}  // namespace

BENCHMARK(BM_HadamardReference)->DenseRange(12, 20, 4);
BENCHMARK(BM_HadamardOmp)->DenseRange(12, 20, 4);
BENCHMARK(BM_CnotReference)->DenseRange(12, 20, 4);
BENCHMARK(BM_CnotOmp)->DenseRange(12, 20, 4);
BENCHMARK(BM_SweepReference)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepOmp)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
