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

#include "ultrafocus/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace ultrafocus {

Peak find_peak(const FieldGrid& field) {
  const GridSpec& g = field.spec;
  if (field.pressure.empty() || field.pressure.size() != g.size()) {
    throw MetricError("field has no pressure samples");
  }
  bool resolvable = false;
  for (const auto& a : g.axes) resolvable = resolvable || a.count >= 3;
  if (!resolvable) throw MetricError("grid needs at least 3 samples along some axis to locate a peak");

  std::size_t best = 0;
  double hi = 0.0, lo = std::abs(field.pressure[0]);
  for (std::size_t i = 0; i < field.pressure.size(); ++i) {
    const double v = std::abs(field.pressure[i]);
    if (v > hi) {
      hi = v;
      best = i;
    }
    lo = std::min(lo, v);
  }
  if (hi - lo <= 1e-12 * std::max(hi, 1.0)) throw MetricError("no unique peak: field is constant");

  Peak peak;
  peak.sample = best;
  peak.position = g.point(best);
  peak.value = hi;
  const auto idx = g.unravel(best);
  double gain = 0.0;
  for (std::size_t a = 0; a < g.axes.size(); ++a) {
    if (g.axes[a].count < 3 || idx[a] == 0 || idx[a] + 1 >= g.axes[a].count) continue;
    auto neighbor = idx;
    neighbor[a] = idx[a] - 1;
    const double left = std::abs(field.pressure[g.linear_index(neighbor[0], neighbor[1], neighbor[2])]);
    neighbor[a] = idx[a] + 1;
    const double right = std::abs(field.pressure[g.linear_index(neighbor[0], neighbor[1], neighbor[2])]);
    const double curvature = left - 2.0 * hi + right;
    if (curvature >= 0.0) continue;
    const double delta = std::clamp(0.5 * (left - right) / curvature, -0.5, 0.5);
    peak.position += delta * g.axes[a].spacing * g.axes[a].direction;
    gain += 0.25 * (left - right) * delta;
  }
  peak.value = hi + std::max(gain, 0.0);
  return peak;
}

std::vector<double> profile_along(const FieldGrid& field, std::size_t axis, const Vec3& through,
                                  FieldQuantity quantity) {
  const GridSpec& g = field.spec;
  if (axis >= g.axes.size()) throw MetricError("axis " + std::to_string(axis) + " is not a grid axis");
  if (quantity == FieldQuantity::kRadiation && field.radiation.size() != g.size()) {
    throw MetricError("radiation pressure has not been computed for this field");
  }
  if (field.pressure.size() != g.size()) throw MetricError("field has no pressure samples");

  std::array<std::size_t, 3> idx{0, 0, 0};
  for (std::size_t a = 0; a < g.axes.size(); ++a) {
    if (a == axis) continue;
    const double c = g.coordinate(through, a) / g.axes[a].spacing;
    const long nearest = std::lround(c);
    if (nearest < 0 || nearest >= static_cast<long>(g.axes[a].count)) {
      throw MetricError("profile line does not intersect the grid");
    }
    idx[a] = static_cast<std::size_t>(nearest);
  }
  std::vector<double> profile(g.axes[axis].count);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    idx[axis] = i;
    const std::size_t s = g.linear_index(idx[0], idx[1], idx[2]);
    profile[i] = quantity == FieldQuantity::kRadiation ? field.radiation[s] : std::abs(field.pressure[s]);
  }
  return profile;
}

double fwhm_of_profile(std::span<const double> profile, double spacing) {
  if (profile.size() < 5) throw MetricError("profile needs at least 5 samples");
  const auto peak_it = std::max_element(profile.begin(), profile.end());
  const auto peak = static_cast<std::size_t>(std::distance(profile.begin(), peak_it));
  const double half = 0.5 * *peak_it;
  if (!(*peak_it > 0.0) || peak == 0 || peak + 1 == profile.size()) {
    throw MetricError("profile not resolved: peak is not interior");
  }

  double left = 0.0;
  bool found_left = false;
  for (std::size_t i = peak; i > 0; --i) {
    if (profile[i - 1] < half) {
      const double t = (half - profile[i - 1]) / (profile[i] - profile[i - 1]);
      left = (static_cast<double>(i - 1) + t) * spacing;
      found_left = true;
      break;
    }
  }
  double right = 0.0;
  bool found_right = false;
  for (std::size_t i = peak; i + 1 < profile.size(); ++i) {
    if (profile[i + 1] < half) {
      const double t = (profile[i] - half) / (profile[i] - profile[i + 1]);
      right = (static_cast<double>(i) + t) * spacing;
      found_right = true;
      break;
    }
  }
  if (!found_left || !found_right) throw MetricError("profile not resolved: half maximum not bracketed");
  return right - left;
}

double fwhm_along(const FieldGrid& field, std::size_t axis, const Vec3& through, FieldQuantity quantity) {
  const auto profile = profile_along(field, axis, through, quantity);
  return fwhm_of_profile(profile, field.spec.axes[axis].spacing);
}

double integrate_force(const FieldGrid& field, const SliceRegion& region) {
  const GridSpec& g = field.spec;
  if (field.radiation.size() != g.size() || g.axes.size() < 2) {
    throw MetricError("radiation pressure has not been computed for this field");
  }
  if (g.axes.size() == 3 && g.axes[2].count != 1) throw MetricError("force integration needs a planar slice");
  if (!(region.width_u > 0.0) || !(region.width_v > 0.0)) throw MetricError("region must have positive size");

  const double su = g.axes[0].spacing, sv = g.axes[1].spacing;
  const double cu = g.coordinate(region.center, 0), cv = g.coordinate(region.center, 1);
  const double hu = 0.5 * region.width_u, hv = 0.5 * region.width_v;
  // Region must lie inside the union of sample cells.
  const double umax = (static_cast<double>(g.axes[0].count) - 0.5) * su;
  const double vmax = (static_cast<double>(g.axes[1].count) - 0.5) * sv;
  const double tol = 1e-9 * std::max(su, sv);
  if (cu - hu < -0.5 * su - tol || cu + hu > umax + tol || cv - hv < -0.5 * sv - tol || cv + hv > vmax + tol) {
    throw MetricError("integration region extends outside the grid");
  }

  double force = 0.0;
  for (std::size_t j = 0; j < g.axes[1].count; ++j) {
    const double dv = static_cast<double>(j) * sv - cv;
    if (std::abs(dv) > hv + 1e-9 * sv) continue;
    for (std::size_t i = 0; i < g.axes[0].count; ++i) {
      const double du = static_cast<double>(i) * su - cu;
      if (std::abs(du) > hu + 1e-9 * su) continue;
      force += field.radiation[g.linear_index(i, j, 0)];
    }
  }
  return force * su * sv;
}

}  // namespace ultrafocus
