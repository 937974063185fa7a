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

#include "ultrafocus/field.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace ultrafocus {

enum class FieldQuantity { kPressure, kRadiation };

struct Peak {
  Vec3 position = Vec3::Zero();
  double value = 0.0;         // |p|, Pa
  std::size_t sample = 0;     // grid sample before refinement
};

/// Rectangle on the first two grid axes, centered at `center`.
struct SliceRegion {
  Vec3 center = Vec3::Zero();
  double width_u = 0.02;  // m along grid axis 0
  double width_v = 0.02;  // m along grid axis 1
};

struct FocusMetrics {
  Vec3 peak_position = Vec3::Zero();
  double peak_pressure = 0.0;
  std::map<std::string, double> fwhm;  // axis label -> m
  double integrated_force = 0.0;       // N
  SliceRegion region;
};

/// Maximum of |p| refined per axis by a 3-point parabola.
/// Throws MetricError when no axis has 3 samples or the field is constant.
Peak find_peak(const FieldGrid& field);

/// The sampled profile along grid `axis` through the grid line nearest `through`.
std::vector<double> profile_along(const FieldGrid& field, std::size_t axis, const Vec3& through,
                                  FieldQuantity quantity);

/// Width between the half-maximum crossings of a sampled profile with uniform spacing.
double fwhm_of_profile(std::span<const double> profile, double spacing);

/// FWHM along grid `axis` through the grid line nearest `through`.
double fwhm_along(const FieldGrid& field, std::size_t axis, const Vec3& through,
                  FieldQuantity quantity = FieldQuantity::kRadiation);

/// Midpoint-rule sum of radiation pressure times cell area over `region`.
double integrate_force(const FieldGrid& field, const SliceRegion& region);

}  // namespace ultrafocus
