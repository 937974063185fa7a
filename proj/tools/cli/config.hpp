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

#include "ultrafocus/json.hpp"
#include "ultrafocus/metrics.hpp"
#include "ultrafocus/phasing.hpp"
#include "ultrafocus/schedule.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ultrafocus::cli {

struct FocusConfig {
  Vec3 point = Vec3(0.0, 0.0, 0.2);
  ReflectionPhasing phasing = ReflectionPhasing::kViaMirror;
};

struct MetricsConfig {
  FieldQuantity quantity = FieldQuantity::kRadiation;
  std::vector<std::size_t> fwhm_axes{0, 1};
  double reflection_factor = 2.0;
  /// Region center; the focus when unset.
  std::optional<Vec3> region_center;
  double region_width_u = 0.02;
  double region_width_v = 0.02;
};

enum class ScheduleMode { kLateral, kAmplitude };

struct ScheduleConfig {
  ScheduleMode mode = ScheduleMode::kLateral;
  double control_rate = 1000.0;
  std::optional<int> quantize_bits = 8;
  AmEnvelope am;
};

struct VerifyConfig {
  std::size_t random_points = 1000;
  std::size_t random_layouts = 20;
  std::uint64_t seed = 1;
};

/// Single self-describing run configuration with one section per command.
struct RunConfig {
  LayoutConfig layout;
  Medium medium;
  Directivity directivity = PistonDirectivity{};
  FocusConfig focus;
  GridSpec grid;
  MetricsConfig metrics;
  EllipseTrajectory trajectory;
  ScheduleConfig schedule;
  VerifyConfig verify;
  unsigned threads = 1;
  std::string output_dir = "out";

  /// Validates every section; throws ConfigError naming the first offending field.
  void validate() const;
  SliceRegion region() const;
};

nlohmann::json to_json(const RunConfig& c);
/// `base_dir` resolves a relative directivity "table_csv" path.
RunConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& c);

/// Hash of the serialized configuration, ignoring output location and thread count.
std::string config_hash(const RunConfig& c);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace ultrafocus::cli
