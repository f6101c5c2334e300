// SPDX-License-Identifier: Apache-2.0
//
// JSON snapshots of a scene for reproducibility audits.

#ifndef RAOPT_EXPORT_HPP
#define RAOPT_EXPORT_HPP

#include "raopt/scene.hpp"

#include <string>
#include <string_view>

namespace raopt {

/// Scene parameters plus every random draw (positions, clusters, RCS, phases).
std::string topology_to_json(const SceneConfig &config, const Topology &topology);

/// Inverse of topology_to_json; the config part is returned through `config`.
Topology topology_from_json(std::string_view text, SceneConfig *config = nullptr);

/// Channels h_{k,n} (transmitter k to user n) at boresights F, as [re, im] pairs per element.
std::string channel_to_json(const SceneConfig &config, const Topology &topology, const OrientationSet &F);

} // namespace raopt

#endif // RAOPT_EXPORT_HPP
