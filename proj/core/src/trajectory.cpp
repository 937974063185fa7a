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

#include "ultrafocus/trajectory.hpp"

#include "ultrafocus/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace ultrafocus {
namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
// Absolute arc-length tolerance for every quadrature call.
constexpr double kArcTolerance = 1e-13;

double quadrant_arc(const EllipseTrajectory& t, int quadrant, double tau) {
  const double start = quadrant * kHalfPi;
  return integrate_adaptive([&](double s) { return t.speed(s); }, start, start + tau, kArcTolerance).value;
}

// Parameter within `quadrant` at which the arc measured from the quadrant start equals `target`.
double invert_arc(const EllipseTrajectory& t, int quadrant, double target, double quadrant_length) {
  if (target <= 0.0) return 0.0;
  if (target >= quadrant_length) return kHalfPi;
  double lo = 0.0, hi = kHalfPi;
  double tau = kHalfPi * target / quadrant_length;
  for (int iter = 0; iter < 200; ++iter) {
    const double residual = quadrant_arc(t, quadrant, tau) - target;
    if (std::abs(residual) <= 1e-15) break;
    (residual > 0.0 ? hi : lo) = tau;
    if (hi - lo <= 1e-15) break;
    const double v = t.speed(quadrant * kHalfPi + tau);
    double next = v > 0.0 ? tau - residual / v : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    tau = next;
  }
  return tau;
}

}  // namespace

void EllipseTrajectory::validate() const {
  if (!(r_x >= 0.0) || !(r_y >= 0.0) || !std::isfinite(r_x) || !std::isfinite(r_y)) {
    throw ConfigError("trajectory radii must be >= 0");
  }
  if (r_x == 0.0 && r_y == 0.0) throw ConfigError("trajectory radii are both zero: no path to traverse");
  if (!(lm_frequency > 0.0) || !std::isfinite(lm_frequency)) throw ConfigError("LM frequency must be > 0");
  if (!(step_width > 0.0) || !std::isfinite(step_width)) throw ConfigError("step width must be > 0");
  if (std::abs(u_axis.norm() - 1.0) > 1e-9 || std::abs(v_axis.norm() - 1.0) > 1e-9) {
    throw ConfigError("trajectory axes must be unit vectors");
  }
  if (std::abs(u_axis.dot(v_axis)) > 1e-9) throw ConfigError("trajectory axes must be orthogonal");
  if (!center.allFinite()) throw ConfigError("trajectory center must be finite");
}

Vec3 EllipseTrajectory::position(double t) const {
  return center + r_x * std::cos(t) * u_axis + r_y * std::sin(t) * v_axis;
}

double EllipseTrajectory::speed(double t) const {
  return std::hypot(r_x * std::sin(t), r_y * std::cos(t));
}

double trajectory_length(const EllipseTrajectory& t) {
  t.validate();
  // The speed has kinks at quadrant boundaries when a radius is zero; integrate each quadrant separately.
  double total = 0.0;
  for (int q = 0; q < 4; ++q) total += quadrant_arc(t, q, kHalfPi);
  return total;
}

double ramanujan_perimeter(double a, double b) {
  return std::numbers::pi * (3.0 * (a + b) - std::sqrt((3.0 * a + b) * (a + 3.0 * b)));
}

FocusSequence sample_trajectory(const EllipseTrajectory& t) {
  t.validate();
  std::array<double, 4> quadrant{};
  for (int q = 0; q < 4; ++q) quadrant[static_cast<std::size_t>(q)] = quadrant_arc(t, q, kHalfPi);
  const double length = quadrant[0] + quadrant[1] + quadrant[2] + quadrant[3];

  // Guard against L/step landing a rounding error above an integer.
  const double ratio = length / t.step_width;
  const auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(ratio * (1.0 - 1e-12))));
  const double spacing = length / static_cast<double>(count);

  FocusSequence seq;
  seq.points.reserve(count);
  int q = 0;
  double quadrant_start = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double s = spacing * static_cast<double>(i);
    while (q < 3 && s >= quadrant_start + quadrant[static_cast<std::size_t>(q)]) {
      quadrant_start += quadrant[static_cast<std::size_t>(q)];
      ++q;
    }
    const double tau = invert_arc(t, q, s - quadrant_start, quadrant[static_cast<std::size_t>(q)]);
    seq.points.push_back(t.position(q * kHalfPi + tau));
  }
  seq.period = t.period();
  seq.dwell = seq.period / static_cast<double>(count);
  seq.path_length = length;
  return seq;
}

}  // namespace ultrafocus
