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
#include "ultrafocus/geometry.hpp"

#include <optional>
#include <vector>

namespace ultrafocus {

struct Medium;

/// Per-entry phase and amplitude for an ArrayLayout. Image entries carry the
/// phase of the physical element they mirror.
struct PhasePlan {
  std::vector<double> phases;      // rad, each in [0, 2*pi)
  std::vector<double> amplitudes;  // each in [0, 1]
  std::optional<Vec3> focus_hint;

  std::size_t size() const noexcept { return phases.size(); }
  /// Throws ConfigError unless lengths match `count` and values are in range.
  void validate(std::size_t count) const;

  /// All phases zero, all amplitudes one.
  static PhasePlan uniform(std::size_t count);
};

/// How a layout with image sources is phased.
enum class ReflectionPhasing {
  kViaMirror,  // element phase from its image-source distance: focus through the reflection
  kDirect,     // element phase from its own distance: ignore the reflector when phasing
};

/// Wraps an angle to [0, 2*pi).
double wrap_phase(double phase);

/// Conjugate-distance phasing, phase_i = (-k |x_i - focus|) mod 2*pi.
/// Throws SingularityError if the focus lies within 1 mm of any source.
PhasePlan solve_focus(const ArrayLayout& layout, const Vec3& focus, const Medium& medium,
                      ReflectionPhasing mode = ReflectionPhasing::kViaMirror);

/// Rounds every phase to the nearest multiple of 2*pi / 2^bits, 1 <= bits <= 16.
PhasePlan quantize_phases(const PhasePlan& plan, int bits);

}  // namespace ultrafocus
