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

#include "ultrafocus/common.hpp"

#include <vector>

namespace ultrafocus {

/// Closed focal path c + r_x cos(t) u + r_y sin(t) v. With r_x = 0 the path
/// degenerates to the segment c +/- r_y v, traversed down and back.
struct EllipseTrajectory {
  Vec3 center = Vec3::Zero();
  Vec3 u_axis = Vec3::UnitX();
  Vec3 v_axis = Vec3::UnitY();
  double r_x = 0.0;            // m, along u_axis
  double r_y = 3e-3;           // m, along v_axis
  double lm_frequency = 5.0;   // Hz
  double step_width = 0.2e-3;  // m, upper bound on consecutive spacing

  void validate() const;
  double period() const noexcept { return 1.0 / lm_frequency; }
  Vec3 position(double t) const;
  /// |dp/dt|.
  double speed(double t) const;
};

struct FocusSequence {
  std::vector<Vec3> points;
  double dwell = 0.0;        // s per point, uniform
  double period = 0.0;       // s per traversal
  double path_length = 0.0;  // m per traversal

  std::size_t size() const noexcept { return points.size(); }
  double lm_frequency() const noexcept { return 1.0 / period; }
};

/// Length of one traversal by adaptive quadrature of the speed function.
double trajectory_length(const EllipseTrajectory& t);

/// Ramanujan's first approximation of an ellipse perimeter.
double ramanujan_perimeter(double a, double b);

/// ceil(path_length / step_width) points, equally spaced in arc length, with
/// uniform dwell period / count. The first point sits at parameter t = 0.
FocusSequence sample_trajectory(const EllipseTrajectory& t);

}  // namespace ultrafocus
