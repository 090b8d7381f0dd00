// Serial reference against the OpenMP kernels.

#include "rht/cdga.hpp"
#include "rht/kernels.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

namespace {

// three small entries per row, like the differential matrices of a cdga
std::vector<rht::SparseVec> random_rows(std::size_t n, std::size_t dim, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<rht::SparseVec> rows;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<rht::SparseVec::Entry> e;
        for (int j = 0; j < 3; ++j)
            e.emplace_back(rng() % dim, rht::make_rational(static_cast<long>(rng() % 5) - 2));
        rows.emplace_back(std::move(e));
    }
    return rows;
}

void bm_rref_serial(benchmark::State& state)
{
    const auto rows = random_rows(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(rht::kernels::serial::rref(rows, static_cast<std::size_t>(state.range(0))));
}

void bm_rref_parallel(benchmark::State& state)
{
    const auto rows = random_rows(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(rht::kernels::parallel::rref(rows, static_cast<std::size_t>(state.range(0))));
}

// images of the degree-k basis under d, the typical map_range workload
rht::Cdga bench_algebra()
{
    std::vector<rht::Generator> gens;
    for (int i = 0; i < 6; ++i)
        gens.push_back({"x" + std::to_string(i), 2, std::nullopt});
    for (int i = 0; i < 6; ++i)
        gens.push_back({"y" + std::to_string(i), 3, std::nullopt});
    std::vector<rht::Element> d(6);
    // d y_i = x_i x_{i+1}
    for (std::uint32_t i = 0; i < 6; ++i) {
        const std::uint32_t j = (i + 1) % 6;
        d.push_back(rht::Element::monomial(rht::Monomial::from_sorted({{std::min(i, j), 1}, {std::max(i, j), 1}})));
    }
    return rht::Cdga(gens, d);
}

template <bool Parallel>
void bm_map_range(benchmark::State& state)
{
    static const rht::Cdga a = bench_algebra();
    const int k = static_cast<int>(state.range(0));
    const auto& basis = a.graded_basis(k);
    auto fn = [&](std::size_t i) { return a.to_vector(a.differential(rht::Element::monomial(basis[i])), k + 1); };
    for (auto _ : state) {
        if constexpr (Parallel)
            benchmark::DoNotOptimize(rht::kernels::parallel::map_range(basis.size(), fn));
        else
            benchmark::DoNotOptimize(rht::kernels::serial::map_range(basis.size(), fn));
    }
    state.counters["basis"] = static_cast<double>(basis.size());
}

} // namespace

BENCHMARK(bm_rref_serial)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_rref_parallel)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_map_range<false>)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_map_range<true>)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
