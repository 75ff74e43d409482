//
// Copyright 2026 The privauction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "privauction/estimator.hpp"
#include "privauction/mechanism.hpp"
#include "privauction/optimal.hpp"
#include "privauction/predictors.hpp"
#include "privauction/verify.hpp"

namespace {

using namespace privauction;

AuctionInstance random_instance(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  std::vector<double> w(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = (rng() & 1U) ? u(rng) : -u(rng);
    v[i] = u(rng);
  }
  return AuctionInstance(std::move(w), std::move(v), 50.0, ValueInterval(0, 1));
}

void BM_RunAuction(benchmark::State& state) {
  const auto inst = random_instance(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(run_auction(inst));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RunAuction)->RangeMultiplier(10)->Range(10, 1000000)->Complexity();

void BM_BruteForceOpt(benchmark::State& state) {
  const auto inst = filter_payable(
      canonicalize(random_instance(static_cast<std::size_t>(state.range(0)), 2)).first).instance;
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_opt(inst));
}
BENCHMARK(BM_BruteForceOpt)->DenseRange(8, 20, 4);

void BM_FractionalOptimum(benchmark::State& state) {
  const auto inst = canonicalize(random_instance(static_cast<std::size_t>(state.range(0)), 3)).first;
  for (auto _ : state) benchmark::DoNotOptimize(fractional_optimum(inst));
}
BENCHMARK(BM_FractionalOptimum)->RangeMultiplier(10)->Range(10, 100000);

void BM_PrivacyIndexExact(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<bool> sel(n, false);
  for (std::size_t i = 0; i < n; i += 2) sel[i] = true;
  const auto d = Dclef::from_instance(random_instance(n, 4), sel);
  for (auto _ : state) benchmark::DoNotOptimize(privacy_index_exact(d));
}
BENCHMARK(BM_PrivacyIndexExact)->DenseRange(10, 25, 5);

void BM_PrivacyIndexGreedy(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<bool> sel(n, false);
  for (std::size_t i = 0; i < n; i += 2) sel[i] = true;
  const auto d = Dclef::from_instance(random_instance(n, 4), sel);
  for (auto _ : state) benchmark::DoNotOptimize(privacy_index_greedy(d));
}
BENCHMARK(BM_PrivacyIndexGreedy)->RangeMultiplier(10)->Range(10, 100000);

void BM_TruthfulnessSweep(benchmark::State& state) {
  SweepConfig cfg;
  cfg.instance_count = 100;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_truthfulness_sweep(cfg));
}
BENCHMARK(BM_TruthfulnessSweep)->Unit(benchmark::kMillisecond);

void BM_RidgeWeights(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t m = 20;
  std::vector<double> data(n * m), q(m);
  for (double& x : data) x = g(rng);
  for (double& x : q) x = g(rng);
  const FeatureSet f(std::move(data), n, m, std::move(q));
  for (auto _ : state) benchmark::DoNotOptimize(ridge_weights(f, 1.0));
}
BENCHMARK(BM_RidgeWeights)->RangeMultiplier(10)->Range(100, 100000);

}  // namespace

BENCHMARK_MAIN();
