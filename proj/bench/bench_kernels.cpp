// Copyright 2026 The scarkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP versions.
//
//     ./bench_kernels --benchmark_filter=Dot

#include "scarkit/fockstate.hpp"
#include "scarkit/kernels.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace scarkit;
using kernels::Box;
using kernels::Complex;
using kernels::Tensor;

Box cube(std::size_t d, std::int64_t n) {
    return Box{std::vector<std::int64_t>(d, 0), std::vector<std::int64_t>(d, n - 1)};
}

Tensor filled(const Box &box) {
    Tensor t(box);
    for (std::size_t i = 0; i < t.data.size(); ++i) {
        t.data[i] = Complex(std::sin(0.37 * double(i)), std::cos(0.11 * double(i)));
    }
    return t;
}

template <bool Parallel>
void BM_Dot(benchmark::State &state) {
    const auto box = cube(3, state.range(0));
    const auto a = filled(box);
    const auto b = filled(box);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? kernels::parallel::dot(a, b)
                                          : kernels::serial::dot(a, b));
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(box.volume()));
}

template <bool Parallel>
void BM_ApplyMode(benchmark::State &state) {
    const std::int64_t n = state.range(0);
    const auto t = filled(cube(3, n));
    const auto m = fockstate::weyl_mode_matrix(2, 0, 0.05, 0, std::size_t(n), 0, std::size_t(n));
    for (auto _ : state) {
        auto out = Parallel ? kernels::parallel::apply_mode(t, 1, m)
                            : kernels::serial::apply_mode(t, 1, m);
        benchmark::DoNotOptimize(out.data.data());
    }
}

template <bool Parallel>
void BM_Outer(benchmark::State &state) {
    const std::int64_t n = state.range(0);
    const auto box = cube(3, n);
    std::vector<std::vector<Complex>> factors(3, std::vector<Complex>(std::size_t(n)));
    for (auto &f : factors) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            f[i] = Complex(1.0 / double(i + 1), 0.5);
        }
    }
    for (auto _ : state) {
        auto out = Parallel ? kernels::parallel::outer(box, factors)
                            : kernels::serial::outer(box, factors);
        benchmark::DoNotOptimize(out.data.data());
    }
}

template <bool Parallel>
void BM_TorusMean(benchmark::State &state) {
    const auto m = std::size_t(state.range(0));
    const std::vector<std::size_t> counts{m, m};
    auto f = [m](std::span<const std::size_t> idx) {
        const double t = 2.0 * M_PI * double(idx[0] + 2 * idx[1]) / double(m);
        return Complex(std::cos(t) * std::cos(t), std::sin(3.0 * t));
    };
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? kernels::parallel::torus_mean(counts, f)
                                          : kernels::serial::torus_mean(counts, f));
    }
}

} // namespace

BENCHMARK(BM_Dot<false>)->Arg(32)->Arg(96);
BENCHMARK(BM_Dot<true>)->Arg(32)->Arg(96);
BENCHMARK(BM_ApplyMode<false>)->Arg(32)->Arg(64);
BENCHMARK(BM_ApplyMode<true>)->Arg(32)->Arg(64);
BENCHMARK(BM_Outer<false>)->Arg(64)->Arg(128);
BENCHMARK(BM_Outer<true>)->Arg(64)->Arg(128);
BENCHMARK(BM_TorusMean<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_TorusMean<true>)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
