// SPDX-License-Identifier: Apache-2.0
//
// ultrafocus - phased-array focusing and modulation schedules for mid-air haptics
// Copyright (C) 2026 The ultrafocus authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "ultrafocus/acoustics.hpp"
#include "ultrafocus/field.hpp"
#include "ultrafocus/geometry.hpp"
#include "ultrafocus/metrics.hpp"
#include "ultrafocus/schedule.hpp"
#include "ultrafocus/trajectory.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <vector>

namespace ultrafocus {

/// Device entry of a layout document: lattice plus pose as position and ZYX Euler angles.
struct DeviceConfig {
  int rows = 14;
  int cols = 18;
  double pitch = 10.16e-3;
  Vec3 position = Vec3::Zero();
  Vec3 euler_deg = Vec3::Zero();

  DeviceSpec spec() const { return {rows, cols, pitch, Pose::from_euler_deg(position, euler_deg)}; }
  bool operator==(const DeviceConfig&) const = default;
};

/// Layout document: devices[], optional mirror, per-element source pressure.
struct LayoutConfig {
  std::vector<DeviceConfig> devices;
  std::optional<MirrorPlane> mirror;
  double source_pressure = 6.0;  // Pa at 1 m: 20 Pa at 0.3 m on axis

  /// Builds the layout and applies the mirror when present.
  ArrayLayout build() const;
  bool operator==(const LayoutConfig& o) const;
};

void to_json(nlohmann::json& j, const DeviceConfig& d);
void from_json(const nlohmann::json& j, DeviceConfig& d);
void to_json(nlohmann::json& j, const LayoutConfig& c);
void from_json(const nlohmann::json& j, LayoutConfig& c);
void to_json(nlohmann::json& j, const Medium& m);
void from_json(const nlohmann::json& j, Medium& m);
void to_json(nlohmann::json& j, const Directivity& d);
void from_json(const nlohmann::json& j, Directivity& d);
void to_json(nlohmann::json& j, const GridSpec& g);
void from_json(const nlohmann::json& j, GridSpec& g);
void to_json(nlohmann::json& j, const EllipseTrajectory& t);
void from_json(const nlohmann::json& j, EllipseTrajectory& t);
void to_json(nlohmann::json& j, const AmEnvelope& e);
void from_json(const nlohmann::json& j, AmEnvelope& e);

nlohmann::json vec_to_json(const Vec3& v);
Vec3 vec_from_json(const nlohmann::json& j);

/// Grid axis labels used in reports: "x", "y", "z" for grid axes 0, 1, 2.
std::string axis_label(std::size_t axis);

/// {peak_position_m, peak_pressure_pa, fwhm_m:{axis:value}, force_n, region}.
nlohmann::json metrics_to_json(const FocusMetrics& m);

/// Sidecar for exported fields: grid spec, PGM normalization and config hash.
nlohmann::json field_sidecar(const GridSpec& grid, double normalization, std::string_view config_hash);

}  // namespace ultrafocus
