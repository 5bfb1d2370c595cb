// Copyright 2026 The seqiso Authors
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
// Serial reference kernel against the OpenMP kernel, plus whole-plan
// verification under both policies.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "seqiso/kernels.hpp"
#include "seqiso/oplib.hpp"
#include "seqiso/sequencer.hpp"

namespace {

using seqiso::Complex;
using seqiso::ComplexMatrix;

struct Fixture {
    std::vector<Complex> state;
    ComplexMatrix step;

    Fixture(std::size_t d, std::size_t n) : state(d << n) {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> g;
        for (auto &a : state) a = Complex{g(rng), g(rng)};
        step = ComplexMatrix::Random(Eigen::Index(2 * d), Eigen::Index(2 * d));
    }
};

template <auto Kernel> void BM_Step(benchmark::State &st) {
    const auto d = static_cast<std::size_t>(st.range(0));
    const auto n = static_cast<std::size_t>(st.range(1));
    Fixture f(d, n);
    std::size_t site = 0;
    for (auto _ : st) {
        Kernel(f.state, d, n, site, f.step);
        site = (site + 1) % n;
        benchmark::DoNotOptimize(f.state.data());
    }
    st.SetItemsProcessed(st.iterations() * std::int64_t(f.state.size()));
}

void step_args(benchmark::internal::Benchmark *b) {
    for (int d : {2, 4, 8})
        for (int n : {8, 12, 16}) b->Args({d, n});
}

BENCHMARK(BM_Step<seqiso::kernels::apply_step_serial>)->Apply(step_args);
BENCHMARK(BM_Step<seqiso::kernels::apply_step_omp>)->Apply(step_args);

void BM_VerifyShor(benchmark::State &st) {
    const auto policy = st.range(0) ? seqiso::ExecutionPolicy::Parallel
                                    : seqiso::ExecutionPolicy::Serial;
    const seqiso::Isometry u = seqiso::shor_encoder();
    const seqiso::SequentialPlan plan = seqiso::build_plan(u);
    for (auto _ : st) benchmark::DoNotOptimize(seqiso::verify_plan(plan, u, policy));
}
BENCHMARK(BM_VerifyShor)->Arg(0)->Arg(1);

void BM_VerifyRandom(benchmark::State &st) {
    const auto policy = st.range(0) ? seqiso::ExecutionPolicy::Parallel
                                    : seqiso::ExecutionPolicy::Serial;
    const seqiso::Isometry u = seqiso::random_isometry(1, 10, 3);
    const seqiso::SequentialPlan plan = seqiso::build_plan(u);
    for (auto _ : st) benchmark::DoNotOptimize(seqiso::verify_plan(plan, u, policy));
}
BENCHMARK(BM_VerifyRandom)->Arg(0)->Arg(1);

} // namespace
BENCHMARK_MAIN();
