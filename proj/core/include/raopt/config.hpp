// SPDX-License-Identifier: Apache-2.0
//
// Flat key-value configuration text:
//
//   # comment
//   K = 4
//   theta_max = pi/3
//   noise_dbm = -80            # one value for all users, or a comma list of K
//
// Real values accept plain numbers and simple products/quotients of numbers
// and `pi` (e.g. `pi/3`, `2*pi/5`).

#ifndef RAOPT_CONFIG_HPP
#define RAOPT_CONFIG_HPP

#include "raopt/scene.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace raopt {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Throws std::invalid_argument on malformed lines (missing '=' or empty key).
KeyValues parse_key_values(std::string_view text);

double parse_real(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);
std::uint64_t parse_unsigned(std::string_view text);
std::vector<std::string> split_list(std::string_view text);
std::string trim(std::string_view text);

/// Applies one scene key. Returns false for keys the scene does not own.
bool apply_scene_key(SceneConfig &config, const std::string &key, const std::string &value);

/// Every key must be a scene key; throws std::invalid_argument otherwise.
SceneConfig parse_scene_config(std::string_view text, SceneConfig base = {});

std::string read_text_file(const std::string &path);

} // namespace raopt

#endif // RAOPT_CONFIG_HPP
