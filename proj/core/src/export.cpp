// SPDX-License-Identifier: Apache-2.0

#include "raopt/export.hpp"

#include "raopt/channel.hpp"

#include <json.hpp>

namespace raopt {

namespace {

using nlohmann::json;

json points(const std::vector<Vec3> &v) {
  json arr = json::array();
  for (const Vec3 &p : v)
    arr.push_back({p.x(), p.y(), p.z()});
  return arr;
}

std::vector<Vec3> points_from(const json &arr) {
  std::vector<Vec3> out;
  for (const json &p : arr) {
    const auto c = p.get<std::vector<double>>();
    require(c.size() == 3, "point must have three coordinates");
    out.emplace_back(c[0], c[1], c[2]);
  }
  return out;
}

} // namespace

std::string topology_to_json(const SceneConfig &config, const Topology &topology) {
  json j;
  j["config"] = {{"K", config.K},
                 {"Q", config.Q},
                 {"lambda", config.lambda},
                 {"d", config.d},
                 {"Mx", config.Mx},
                 {"My", config.My},
                 {"p", config.p},
                 {"theta_max", config.theta_max},
                 {"noise_dbm", config.noise_dbm},
                 {"p_max_dbm", config.p_max_dbm},
                 {"alpha", config.alpha},
                 {"eta_q", config.eta_q},
                 {"seed", config.seed}};
  j["tx_centers"] = points(topology.tx_centers);
  j["element_positions"] = points(topology.element_positions);
  j["users"] = points(topology.users);
  j["clusters"] = points(topology.clusters);
  j["rcs"] = topology.rcs;
  j["phases"] = topology.phases;
  return j.dump(2) + '\n';
}

Topology topology_from_json(std::string_view text, SceneConfig *config) {
  const json j = json::parse(text);
  if (config) {
    const json &c = j.at("config");
    config->K = c.at("K").get<std::size_t>();
    config->Q = c.at("Q").get<std::size_t>();
    config->lambda = c.at("lambda").get<double>();
    config->d = c.at("d").get<double>();
    config->Mx = c.at("Mx").get<std::size_t>();
    config->My = c.at("My").get<std::size_t>();
    config->p = c.at("p").get<int>();
    config->theta_max = c.at("theta_max").get<double>();
    config->noise_dbm = c.at("noise_dbm").get<std::vector<double>>();
    config->p_max_dbm = c.at("p_max_dbm").get<std::vector<double>>();
    config->alpha = c.at("alpha").get<std::vector<double>>();
    config->eta_q = c.at("eta_q").get<double>();
    config->seed = c.at("seed").get<std::uint64_t>();
  }
  Topology t;
  t.tx_centers = points_from(j.at("tx_centers"));
  t.element_positions = points_from(j.at("element_positions"));
  t.users = points_from(j.at("users"));
  t.clusters = points_from(j.at("clusters"));
  t.rcs = j.at("rcs").get<std::vector<double>>();
  t.phases = j.at("phases").get<std::vector<double>>();
  return t;
}

std::string channel_to_json(const SceneConfig &config, const Topology &topology, const OrientationSet &F) {
  const ChannelTensor H = ChannelModel(topology, config).evaluate(F);
  json links = json::array();
  for (std::size_t k = 0; k < H.K; ++k)
    for (std::size_t n = 0; n < H.K; ++n) {
      json h = json::array();
      const CVec &v = H.h[k * H.K + n];
      for (Eigen::Index m = 0; m < v.size(); ++m)
        h.push_back({v[m].real(), v[m].imag()});
      links.push_back({{"tx", k}, {"user", n}, {"h", h}});
    }
  json j;
  j["K"] = H.K;
  j["M"] = H.M;
  j["links"] = links;
  return j.dump(2) + '\n';
}

} // namespace raopt
