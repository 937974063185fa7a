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
#include "ultrafocus/geometry.hpp"
#include "ultrafocus/phasing.hpp"
#include "ultrafocus/trajectory.hpp"

#include <optional>
#include <vector>

namespace ultrafocus {

enum class AmWaveform { kSine, kSquare };

struct AmEnvelope {
  double am_frequency = 200.0;  // Hz
  AmWaveform waveform = AmWaveform::kSine;
  double depth = 1.0;           // [0, 1]

  void validate() const;
  /// Envelope amplitude at time t (s).
  double amplitude(double t) const;
};

struct Frame {
  double timestamp = 0.0;  // s
  std::vector<double> phases;
  std::vector<double> amplitudes;

  bool operator==(const Frame&) const = default;
};

struct FrameSchedule {
  double control_rate = 1000.0;  // Hz
  std::size_t transducer_count = 0;
  std::vector<Frame> frames;

  bool operator==(const FrameSchedule&) const = default;
};

struct CompileOptions {
  std::optional<int> quantize_bits;
  ReflectionPhasing phasing = ReflectionPhasing::kViaMirror;
};

/// Number of control ticks in `period` seconds, tolerant of representation error.
std::size_t frames_per_period(double period, double control_rate);

/// Index of the sequence point active at frame `frame` (zero-order hold).
std::size_t active_point(std::size_t frame, std::size_t point_count, double frames_in_period);

/// One LM period: each frame carries the focus solution of the active sequence point.
/// Throws ConfigError if control_rate < point_count * lm_frequency.
FrameSchedule compile_lm(const ArrayLayout& layout, const FocusSequence& seq, const Medium& medium,
                         double control_rate, const CompileOptions& options = {});

/// One AM period at a fixed focus. Throws ConfigError if control_rate < 10 * am_frequency.
FrameSchedule compile_am(const ArrayLayout& layout, const Vec3& focus, const AmEnvelope& env,
                         const Medium& medium, double control_rate, const CompileOptions& options = {});

}  // namespace ultrafocus
