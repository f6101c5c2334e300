// SPDX-License-Identifier: Apache-2.0

#include "raopt/config.hpp"

#include "raopt/export.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace raopt;

TEST(Config, KeyValueParsing) {
  const KeyValues kv = parse_key_values("# comment\nK = 3\n\n  p=6   # trailing\ntheta_max = pi/4\n");
  ASSERT_EQ(kv.size(), 3u);
  EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"K", "3"}));
  EXPECT_EQ(kv[1], (std::pair<std::string, std::string>{"p", "6"}));
  EXPECT_THROW(parse_key_values("no equals sign\n"), std::invalid_argument);
}

TEST(Config, RealExpressions) {
  EXPECT_DOUBLE_EQ(parse_real("pi/3"), kPi / 3);
  EXPECT_DOUBLE_EQ(parse_real("3*pi/10"), 3 * kPi / 10);
  EXPECT_DOUBLE_EQ(parse_real("-10"), -10.0);
  EXPECT_DOUBLE_EQ(parse_real("1e-3"), 1e-3);
  EXPECT_THROW(parse_real("abc"), std::invalid_argument);
  EXPECT_THROW(parse_real(""), std::invalid_argument);
  EXPECT_EQ(parse_real_list("1, 2 ,3"), (std::vector<double>{1, 2, 3}));
  EXPECT_THROW(parse_unsigned("-1"), std::invalid_argument);
}

TEST(Config, SceneFromText) {
  const SceneConfig c = parse_scene_config("K = 2\nMx = 3\nMy = 1\nnoise_dbm = -80, -70\nseed = 99\n");
  EXPECT_EQ(c.K, 2u);
  EXPECT_EQ(c.M(), 3u);
  EXPECT_EQ(c.noise_dbm, (std::vector<double>{-80, -70}));
  EXPECT_EQ(c.seed, 99u);
  EXPECT_THROW(parse_scene_config("bogus = 1\n"), std::invalid_argument);
}

TEST(Config, TopologyJsonRoundTrip) {
  SceneConfig c;
  c.seed = 12;
  c.p = 6;
  const Topology t = generate_topology(c);
  SceneConfig back;
  const Topology t2 = topology_from_json(topology_to_json(c, t), &back);
  EXPECT_EQ(t, t2);
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_EQ(back.p, c.p);
  EXPECT_EQ(back.theta_max, c.theta_max);
}

TEST(Config, ChannelJsonHasEveryLink) {
  SceneConfig c;
  c.K = 2;
  const Topology t = generate_topology(c);
  const std::string json = channel_to_json(c, t, OrientationSet(2, c.M()));
  EXPECT_NE(json.find("\"links\""), std::string::npos);
  EXPECT_NE(json.find("\"user\": 1"), std::string::npos);
}
