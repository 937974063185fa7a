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

#include "ultrafocus/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ultrafocus {

void AmEnvelope::validate() const {
  if (!(am_frequency > 0.0) || !std::isfinite(am_frequency)) throw ConfigError("AM frequency must be > 0");
  if (!(depth >= 0.0 && depth <= 1.0)) throw ConfigError("AM depth must lie in [0, 1]");
}

double AmEnvelope::amplitude(double t) const {
  const double cycles = am_frequency * t;
  if (waveform == AmWaveform::kSine) {
    return 1.0 - 0.5 * depth + 0.5 * depth * std::sin(2.0 * std::numbers::pi * cycles);
  }
  const double frac = cycles - std::floor(cycles + 1e-12);
  return frac < 0.5 - 1e-12 ? 1.0 : 1.0 - depth;
}

std::size_t frames_per_period(double period, double control_rate) {
  return static_cast<std::size_t>(std::max(1.0, std::ceil(period * control_rate * (1.0 - 1e-12))));
}

std::size_t active_point(std::size_t frame, std::size_t point_count, double frames_in_period) {
  const double position = static_cast<double>(frame) * static_cast<double>(point_count) / frames_in_period;
  const auto idx = static_cast<std::size_t>(std::floor(position + 1e-9));
  return std::min(idx, point_count - 1);
}

namespace {

void check_rate(double control_rate) {
  if (!(control_rate > 0.0) || !std::isfinite(control_rate)) throw ConfigError("control rate must be > 0");
}

PhasePlan finish(PhasePlan plan, const CompileOptions& options) {
  return options.quantize_bits ? quantize_phases(plan, *options.quantize_bits) : plan;
}

}  // namespace

FrameSchedule compile_lm(const ArrayLayout& layout, const FocusSequence& seq, const Medium& medium,
                         double control_rate, const CompileOptions& options) {
  check_rate(control_rate);
  if (seq.points.empty() || !(seq.period > 0.0)) throw ConfigError("focus sequence is empty");
  const double minimum = static_cast<double>(seq.size()) / seq.period;
  if (control_rate < minimum * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "control rate " << control_rate << " Hz is below the minimum " << minimum
        << " Hz (one frame per focus point)";
    throw ConfigError(msg.str());
  }

  std::vector<PhasePlan> plans;
  plans.reserve(seq.size());
  for (const auto& p : seq.points) plans.push_back(finish(solve_focus(layout, p, medium, options.phasing), options));

  FrameSchedule schedule;
  schedule.control_rate = control_rate;
  schedule.transducer_count = layout.size();
  const std::size_t n = frames_per_period(seq.period, control_rate);
  const double frames_in_period = seq.period * control_rate;
  schedule.frames.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& plan = plans[active_point(j, seq.size(), frames_in_period)];
    schedule.frames.push_back({static_cast<double>(j) / control_rate, plan.phases, plan.amplitudes});
  }
  return schedule;
}

FrameSchedule compile_am(const ArrayLayout& layout, const Vec3& focus, const AmEnvelope& env,
                         const Medium& medium, double control_rate, const CompileOptions& options) {
  check_rate(control_rate);
  env.validate();
  if (control_rate < 10.0 * env.am_frequency) {
    std::ostringstream msg;
    msg << "control rate " << control_rate << " Hz is below the minimum " << 10.0 * env.am_frequency
        << " Hz (10x the AM frequency)";
    throw ConfigError(msg.str());
  }
  const PhasePlan plan = finish(solve_focus(layout, focus, medium, options.phasing), options);

  FrameSchedule schedule;
  schedule.control_rate = control_rate;
  schedule.transducer_count = layout.size();
  const std::size_t n = frames_per_period(1.0 / env.am_frequency, control_rate);
  schedule.frames.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) / control_rate;
    schedule.frames.push_back({t, plan.phases, std::vector<double>(layout.size(), env.amplitude(t))});
  }
  return schedule;
}

}  // namespace ultrafocus
