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

#include <numbers>
#include <variant>
#include <vector>

namespace ultrafocus {

/// Propagation medium. The wavenumber is always derived from frequency and speed.
struct Medium {
  double speed_of_sound = 340.0;        // m/s
  double density = 1.2;                 // kg/m^3
  double carrier_frequency = 40'000.0;  // Hz

  double wavenumber() const noexcept { return 2.0 * std::numbers::pi * carrier_frequency / speed_of_sound; }
  double wavelength() const noexcept { return speed_of_sound / carrier_frequency; }
  void validate() const;
};

struct OmniDirectivity {};

/// Baffled circular piston: |2 J1(k a sin(theta)) / (k a sin(theta))|.
struct PistonDirectivity {
  double aperture_radius = 4.5e-3;  // m
};

/// Tabulated gain versus off-axis angle, linearly interpolated and clamped
/// to the last entry past its angle.
struct TableDirectivity {
  std::vector<double> angles_deg;
  std::vector<double> gains;
};

using Directivity = std::variant<OmniDirectivity, PistonDirectivity, TableDirectivity>;

void validate(const Directivity& d);

/// Gain for an emission `theta` radians off axis, 0 <= theta <= pi.
double directivity_gain(const Directivity& d, double theta, double wavenumber);

/// 2 J1(x) / x with the x -> 0 limit of 1.
double jinc(double x);

}  // namespace ultrafocus
