// SPDX-License-Identifier: Apache-2.0

#include "raopt/orient_fw.hpp"

#include "raopt/ao.hpp"
#include "raopt/metrics.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace raopt;
using raopt::testing::random_cap_point;
using raopt::testing::random_unit;

TEST(OrientFw, TangentProjection) {
  const Vec3 f = Vec3::UnitZ();
  EXPECT_EQ(tangent_project(f, 3.0 * f), Vec3::Zero());
  EXPECT_EQ(tangent_project(f, Vec3(1, -2, 0)), Vec3(1, -2, 0));
  EXPECT_EQ(tangent_project(f, Vec3(1, 1, 1)), Vec3(1, 1, 0));
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Vec3 g = random_unit(rng), h = random_unit(rng) * 5.0;
    EXPECT_LT(std::abs(tangent_project(g, h).dot(g)), 1e-12);
  }
}

TEST(OrientFw, OracleCases) {
  const double tm = kPi / 3;
  Rng rng(2);
  const Vec3 f = random_cap_point(rng, tm);
  // Case (a): normalized tangent gradient inside the cap.
  EXPECT_LT((cap_oracle(Vec3(1, 0, 0), Vec3(0, 0, 2), tm) - Vec3::UnitZ()).norm(), 1e-15);
  // Case (b): clipped to the rim along the gradient azimuth.
  EXPECT_LT((cap_oracle(Vec3::UnitZ(), Vec3(1, 0, 0), tm) - Vec3(std::sqrt(3.0) / 2, 0, 0.5)).norm(), 1e-15);
  // Case (c): straight down, deterministic azimuth u = [1, 0].
  EXPECT_LT((cap_oracle(Vec3(1, 0, 0), Vec3(0, 0, -1), tm) - Vec3(std::sqrt(3.0) / 2, 0, 0.5)).norm(), 1e-15);
  // Stationary: vanishing tangent gradient returns f.
  EXPECT_EQ(cap_oracle(f, Vec3(1e-15, 0, 0), tm), f);
}

TEST(OrientFw, OracleBeatsRandomFeasiblePoints) {
  Rng rng(3);
  for (int state = 0; state < 20; ++state) {
    const double tm = rng.uniform(0.05, kPi / 2);
    const Vec3 f = random_cap_point(rng, tm);
    const Vec3 tg = tangent_project(f, random_unit(rng));
    const Vec3 s = cap_oracle(f, tg, tm);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    EXPECT_GE(s.z(), std::cos(tm) - 1e-12);
    const double best = tg.dot(s);
    for (int i = 0; i < 10000; ++i)
      EXPECT_GE(best, tg.dot(random_cap_point(rng, tm)) - 1e-15);
  }
}

TEST(OrientFw, GapValues) {
  const std::vector<Vec3> zero{Vec3::Zero()};
  EXPECT_EQ(fw_gap(zero, zero), 0.0);

  // Case (a) with a unit tangent gradient: gap = ||tg||.
  const Vec3 f2 = Vec3(0.3, 0.0, 1.0).normalized();
  const Vec3 tg = tangent_project(f2, Vec3(0, 0.7, 0.2));
  const double tm = kPi / 2;
  const Vec3 s = cap_oracle(f2, tg, tm);
  ASSERT_GE(tg.normalized().z(), std::cos(tm));
  const std::vector<Vec3> tgs{tg}, ds{s - f2};
  EXPECT_NEAR(fw_gap(tgs, ds), tg.norm(), 1e-15);

  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.uniform(0.0, kPi / 2);
    const Vec3 x = random_cap_point(rng, t);
    const Vec3 g = tangent_project(x, random_unit(rng));
    const std::vector<Vec3> a{g}, d{cap_oracle(x, g, t) - x};
    EXPECT_GE(fw_gap(a, d), -1e-12);
  }
}

TEST(OrientFw, UpdateStaysOnCap) {
  const Vec3 f = Vec3::UnitZ();
  EXPECT_EQ(fw_update(f, Vec3::Zero(), 1e-6), f);
  const Vec3 s(std::sqrt(3.0) / 2, 0, 0.5);
  EXPECT_LT((fw_update(f, s - f, 1.0) - s).norm(), 1e-15);
  EXPECT_LT((fw_update(f, s - f, 0.5) - Vec3(std::sqrt(3.0) / 4, 0, 0.75).normalized()).norm(), 1e-15);
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double tm = rng.uniform(0.0, kPi / 2);
    const Vec3 a = random_cap_point(rng, tm), b = random_cap_point(rng, tm);
    const Vec3 x = fw_update(a, b - a, rng.uniform(1e-8, 1.0));
    EXPECT_NEAR(x.norm(), 1.0, 1e-12);
    EXPECT_GE(x.z(), std::cos(tm) - 1e-12);
  }
}

namespace {

// Smooth test objective on one element: alignment with a target direction.
struct Alignment {
  Vec3 target;
  double value(const OrientationSet &F) const { return F[0].dot(target); }
  std::vector<Vec3> gradient(const OrientationSet &) const { return {target}; }
};

} // namespace

TEST(OrientFw, ZeroGapStepIsAcceptedUnchanged) {
  OrientationSet F(1, 1);
  const Alignment obj{Vec3::UnitZ()};
  const auto g = obj.gradient(F);
  const FwDirection dir = fw_direction(F, g, kPi / 3);
  EXPECT_EQ(dir.gap, 0.0);
  const FwIterate it = armijo_fw_step([&](const OrientationSet &X) { return obj.value(X); }, F, 1.0, dir, {});
  EXPECT_TRUE(it.accepted);
  EXPECT_EQ(it.orientations, F);
  EXPECT_EQ(it.wsr, it.wsr_prev);
}

TEST(OrientFw, ArmijoCertificateOnAcceptedSteps) {
  SceneConfig c;
  c.seed = 9;
  const Topology t = generate_topology(c);
  const ChannelModel model(t, c);
  OrientationSet F(c.K, c.M());
  const BeamformerSet bf = [&] {
    const ChannelTensor H = model.evaluate(F);
    return wmmse_solve(H, c.noise_mw(), c.weights(), c.budgets_mw()).w;
  }();
  const FixedBeamformerObjective obj{&model, &bf, c.noise_mw(), c.weights()};
  auto value = [&](const OrientationSet &X) { return obj.value(X); };
  const ArmijoParams ap;
  for (int step = 0; step < 10; ++step) {
    const double R = value(F);
    const FwDirection dir = fw_direction(F, obj.gradient(F), c.theta_max);
    const FwIterate it = armijo_fw_step(value, F, R, dir, ap);
    ASSERT_TRUE(it.accepted);
    EXPECT_GT(it.step, 0.0);
    EXPECT_GE(it.wsr - R, ap.c_a * it.step * dir.gap);
    EXPECT_EQ(it.wsr, value(it.orientations));
    F = it.orientations;
  }
}

TEST(OrientFw, StationaryStartReturnsAfterOneIteration) {
  const Alignment obj{Vec3::UnitZ()};
  const FwResult r = optimize_orientations([&](const OrientationSet &X) { return obj.value(X); },
                                           [&](const OrientationSet &X) { return obj.gradient(X); },
                                           OrientationSet(1, 1), kPi / 3);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_TRUE(r.stationary);
  EXPECT_EQ(r.orientations, OrientationSet(1, 1));
}

TEST(OrientFw, SingleLinkSteersToUser) {
  SceneConfig c;
  c.K = 1;
  c.Q = 0;
  c.Mx = c.My = 1;
  const Vec3 user(20.0, -10.0, 60.0); // 20.4 degrees off zenith, inside the cap
  const Topology t = raopt::testing::make_topology(c, {Vec3::Zero()}, {user});
  const ChannelModel model(t, c);
  const BeamformerSet bf{{CVec::Constant(1, 1.0)}, {1.0}};
  const FixedBeamformerObjective obj{&model, &bf, c.noise_mw(), c.weights()};
  FwParams params;
  params.tol = 1e-12;
  params.max_iter = 2000;
  const FwResult r = optimize_orientations([&](const OrientationSet &X) { return obj.value(X); },
                                           [&](const OrientationSet &X) { return obj.gradient(X); },
                                           OrientationSet(1, 1), c.theta_max, params);
  OrientationSet aligned(1, 1);
  aligned[0] = user.normalized();
  EXPECT_NEAR(r.wsr, obj.value(aligned), 1e-6);
  EXPECT_LT((r.orientations[0] - user.normalized()).norm(), 1e-2);
}

TEST(OrientFw, TracesAreMonotoneAndFeasible) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SceneConfig c;
    c.seed = seed;
    const Topology t = generate_topology(c);
    const ChannelModel model(t, c);
    const OrientationSet F0(c.K, c.M());
    const BeamformerSet bf = wmmse_solve(model.evaluate(F0), c.noise_mw(), c.weights(), c.budgets_mw()).w;
    const FixedBeamformerObjective obj{&model, &bf, c.noise_mw(), c.weights()};
    FwParams params;
    params.record_history = true;
    const FwResult r = optimize_orientations([&](const OrientationSet &X) { return obj.value(X); },
                                             [&](const OrientationSet &X) { return obj.gradient(X); }, F0,
                                             c.theta_max, params);
    double prev = r.initial_wsr;
    for (const FwTraceEntry &e : r.trace) {
      EXPECT_GE(e.wsr, prev - 1e-9);
      EXPECT_GE(e.gap, -1e-12);
      prev = e.wsr;
    }
    for (const OrientationSet &X : r.history)
      EXPECT_TRUE(is_feasible(X, c.theta_max));
    EXPECT_LE(r.trace.size(), static_cast<std::size_t>(params.max_iter));
  }
}
