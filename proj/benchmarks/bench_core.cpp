// SPDX-License-Identifier: Apache-2.0

#include "raopt/ao.hpp"
#include "raopt/channel.hpp"
#include "raopt/linear_bf.hpp"
#include "raopt/orient_fw.hpp"
#include "raopt/wmmse.hpp"

#include <benchmark/benchmark.h>

using namespace raopt;

namespace {

SceneConfig scene(std::size_t K, std::size_t My) {
  SceneConfig c;
  c.K = K;
  c.My = My;
  return c;
}

} // namespace

static void BM_ChannelEvaluate(benchmark::State &state) {
  const SceneConfig c = scene(static_cast<std::size_t>(state.range(0)), 2);
  const ChannelModel model(generate_topology(c), c);
  const OrientationSet F(c.K, c.M());
  for (auto _ : state)
    benchmark::DoNotOptimize(model.evaluate(F));
}
BENCHMARK(BM_ChannelEvaluate)->Arg(2)->Arg(4)->Arg(8);

static void BM_ChannelWithGradient(benchmark::State &state) {
  const SceneConfig c = scene(static_cast<std::size_t>(state.range(0)), 2);
  const ChannelModel model(generate_topology(c), c);
  const OrientationSet F(c.K, c.M());
  for (auto _ : state)
    benchmark::DoNotOptimize(model.evaluate(F, true));
}
BENCHMARK(BM_ChannelWithGradient)->Arg(2)->Arg(4)->Arg(8);

static void BM_WmmseSweep(benchmark::State &state) {
  const SceneConfig c = scene(4, static_cast<std::size_t>(state.range(0)));
  const ChannelTensor H = channel(generate_topology(c), OrientationSet(c.K, c.M()), c);
  const auto noise = c.noise_mw();
  const auto weights = c.weights();
  const auto budgets = c.budgets_mw();
  const BeamformerSet w0 = mrt(H, budgets).bf;
  for (auto _ : state) {
    const auto u = update_u(H, w0.w, noise);
    const auto v = update_v(mse(H, w0.w, u, noise));
    benchmark::DoNotOptimize(update_w(H, u, v, weights, budgets));
  }
}
BENCHMARK(BM_WmmseSweep)->Arg(2)->Arg(4)->Arg(6);

static void BM_FrankWolfeStep(benchmark::State &state) {
  const SceneConfig c = scene(4, 2);
  const Topology topo = generate_topology(c);
  const ChannelModel model(topo, c);
  const OrientationSet F(c.K, c.M());
  const BeamformerSet bf = mrt(model.evaluate(F), c.budgets_mw()).bf;
  const FixedBeamformerObjective obj{&model, &bf, c.noise_mw(), c.weights()};
  const OrientationObjective value = [&](const OrientationSet &X) { return obj.value(X); };
  const double v0 = obj.value(F);
  for (auto _ : state) {
    const FwDirection dir = fw_direction(F, obj.gradient(F), c.theta_max);
    benchmark::DoNotOptimize(armijo_fw_step(value, F, v0, dir, {}));
  }
}
BENCHMARK(BM_FrankWolfeStep);

static void BM_AoSolve(benchmark::State &state) {
  SceneConfig c = scene(4, 2);
  const Topology topo = generate_topology(c);
  for (auto _ : state)
    benchmark::DoNotOptimize(ao_solve(c, topo));
}
BENCHMARK(BM_AoSolve)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
