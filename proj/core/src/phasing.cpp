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

#include "ultrafocus/phasing.hpp"

#include "ultrafocus/acoustics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ultrafocus {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_phase(double phase) {
  double w = std::fmod(phase, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2*pi.
  if (w >= kTwoPi) w = 0.0;
  return w == 0.0 ? 0.0 : w;
}

PhasePlan PhasePlan::uniform(std::size_t count) {
  return PhasePlan{std::vector<double>(count, 0.0), std::vector<double>(count, 1.0), std::nullopt};
}

void PhasePlan::validate(std::size_t count) const {
  if (phases.size() != count || amplitudes.size() != count) {
    throw ConfigError("phase plan has " + std::to_string(phases.size()) + " entries, layout has " +
                      std::to_string(count));
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!(phases[i] >= 0.0 && phases[i] < kTwoPi)) throw ConfigError("phase outside [0, 2*pi)");
    if (!(amplitudes[i] >= 0.0 && amplitudes[i] <= 1.0)) throw ConfigError("amplitude outside [0, 1]");
  }
}

PhasePlan solve_focus(const ArrayLayout& layout, const Vec3& focus, const Medium& medium, ReflectionPhasing mode) {
  medium.validate();
  if (!focus.allFinite()) throw ConfigError("focus must be finite");
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if ((layout[i].pose.position - focus).norm() <= kSingularityRadius) {
      throw SingularityError("focus within 1 mm of source " + std::to_string(i), i);
    }
  }

  const double k = medium.wavenumber();
  const std::size_t real = layout.real_count();
  const bool via_mirror = layout.has_images() && mode == ReflectionPhasing::kViaMirror;

  PhasePlan plan = PhasePlan::uniform(layout.size());
  plan.focus_hint = focus;
  for (std::size_t i = 0; i < real; ++i) {
    const std::size_t emitter = via_mirror ? i + real : i;
    const double phase = wrap_phase(-k * (layout[emitter].pose.position - focus).norm());
    plan.phases[i] = phase;
    if (layout.has_images()) plan.phases[i + real] = phase;
  }
  return plan;
}

PhasePlan quantize_phases(const PhasePlan& plan, int bits) {
  if (bits < 1 || bits > 16) throw ConfigError("quantization bits must lie in [1, 16]");
  const double levels = std::ldexp(1.0, bits);
  const double step = kTwoPi / levels;
  PhasePlan out = plan;
  for (auto& phase : out.phases) {
    double level = std::round(phase / step);
    if (level >= levels) level -= levels;
    if (level < 0.0) level += levels;
    phase = level * step;
  }
  return out;
}

}  // namespace ultrafocus
