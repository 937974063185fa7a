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

#include "ultrafocus/acoustics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

namespace ultrafocus {

void Medium::validate() const {
  if (!(speed_of_sound > 0.0) || !(density > 0.0) || !(carrier_frequency > 0.0) ||
      !std::isfinite(speed_of_sound) || !std::isfinite(density) || !std::isfinite(carrier_frequency)) {
    throw ConfigError("medium speed_of_sound, density and carrier_frequency must all be > 0");
  }
}

void validate(const Directivity& d) {
  if (const auto* piston = std::get_if<PistonDirectivity>(&d)) {
    if (!(piston->aperture_radius > 0.0)) throw ConfigError("piston aperture radius must be > 0");
    return;
  }
  const auto* table = std::get_if<TableDirectivity>(&d);
  if (table == nullptr) return;
  const auto& a = table->angles_deg;
  const auto& g = table->gains;
  if (a.empty() || a.size() != g.size()) {
    throw ConfigError("directivity table needs matching, non-empty angle and gain columns");
  }
  if (a.front() != 0.0 || g.front() != 1.0) {
    throw ConfigError("directivity table must start at 0 deg with gain 1");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] >= 0.0 && a[i] <= 90.0)) throw ConfigError("directivity table angles must lie in [0, 90] deg");
    if (!(g[i] >= 0.0 && g[i] <= 1.0)) throw ConfigError("directivity table gains must lie in [0, 1]");
    if (i > 0 && !(a[i] > a[i - 1])) {
      throw ConfigError("directivity table angles must be strictly increasing");
    }
  }
}

double jinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0;
  return 2.0 * std::cyl_bessel_j(1.0, std::abs(x)) / std::abs(x);
}

namespace {

double table_gain(const TableDirectivity& t, double theta_deg) {
  const auto& a = t.angles_deg;
  if (theta_deg >= a.back()) return t.gains.back();
  const auto hi = std::upper_bound(a.begin(), a.end(), theta_deg);
  const auto i = static_cast<std::size_t>(std::distance(a.begin(), hi));
  const double w = (theta_deg - a[i - 1]) / (a[i] - a[i - 1]);
  return t.gains[i - 1] + w * (t.gains[i] - t.gains[i - 1]);
}

}  // namespace

double directivity_gain(const Directivity& d, double theta, double wavenumber) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw ConfigError("directivity angle must lie in [0, pi], got " + std::to_string(theta));
  }
  struct Visitor {
    double theta;
    double k;
    double operator()(const OmniDirectivity&) const { return 1.0; }
    double operator()(const PistonDirectivity& p) const {
      return std::abs(jinc(k * p.aperture_radius * std::sin(theta)));
    }
    double operator()(const TableDirectivity& t) const {
      return table_gain(t, theta * 180.0 / std::numbers::pi);
    }
  };
  return std::visit(Visitor{theta, wavenumber}, d);
}

}  // namespace ultrafocus
