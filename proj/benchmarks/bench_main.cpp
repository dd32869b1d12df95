// Copyright 2026 The Qihyp Authors.
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

#include <benchmark/benchmark.h>

#include "qihyp/freewords.hpp"
#include "qihyp/grouplab.hpp"
#include "qihyp/hyp2.hpp"
#include "qihyp/packing.hpp"
#include "qihyp/rng.hpp"

namespace {

using namespace qihyp;

void BM_HypDistance(benchmark::State& state) {
  Rng rng(1);
  const hyp2::HPoint p(rng.uniform(-5, 5), rng.uniform(0.1, 10));
  const hyp2::HPoint q(rng.uniform(-5, 5), rng.uniform(0.1, 10));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hyp2::distance(p, q));
  }
}
BENCHMARK(BM_HypDistance);

void BM_MoebiusProduct(benchmark::State& state) {
  const auto a = hyp2::MoebiusElement::rotation(hyp2::HPoint(0.3, 1.2), 0.9);
  const auto b = hyp2::MoebiusElement::axis_translation(0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_MoebiusProduct);

void BM_GreedyPackHyperbolic(benchmark::State& state) {
  const packing::PackingConfig config{packing::Space::Hyperbolic,
                                      static_cast<double>(state.range(0)), 0.5,
                                      0.25};
  for (auto _ : state) {
    benchmark::DoNotOptimize(packing::greedy_pack(config, 99, 10000));
  }
}
BENCHMARK(BM_GreedyPackHyperbolic)->Arg(3)->Arg(5);

void BM_BallEnumerateSanov(benchmark::State& state) {
  const grouplab::GroupSpec sanov{
      {{"x", hyp2::MoebiusElement(1, 2, 0, 1)},
       {"y", hyp2::MoebiusElement(1, 0, 2, 1)}},
      false};
  grouplab::MetricConfig cfg;
  cfg.epsilon = 0.01;
  cfg.dedupe_quantum = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        grouplab::ball_enumerate(sanov, static_cast<int>(state.range(0)), cfg));
  }
}
BENCHMARK(BM_BallEnumerateSanov)->Arg(4)->Arg(6);

void BM_GenCommLevel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        freewords::gen_comm_level(static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_GenCommLevel)->Arg(2)->Arg(3);

void BM_ReduceLevel3Word(benchmark::State& state) {
  const auto level = freewords::gen_comm_level(3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(freewords::reduce(level.words[i]));
    i = (i + 1) % level.words.size();
  }
}
BENCHMARK(BM_ReduceLevel3Word);

}  // namespace

BENCHMARK_MAIN();
