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
#include "ultrafocus/metrics.hpp"
#include "ultrafocus/schedule.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ultrafocus {

/// Raised for malformed files and failed reads/writes.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 64-bit FNV-1a digest as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

// Field export: "x_m,y_m,z_m,re_pa,im_pa,abs_pa,radiation_pa", one row per sample
// in linear index order, preceded by a "# config_hash=" comment line.
void write_field_csv(std::ostream& out, const FieldGrid& field, std::string_view config_hash);

struct FieldCsvRow {
  Vec3 position = Vec3::Zero();
  Complex pressure;
  double radiation = 0.0;
};
std::vector<FieldCsvRow> read_field_csv(std::istream& in);

/// 8-bit binary PGM of |p| / max|p| over the first two grid axes (axis 1 points up).
/// Returns the normalization, max |p| in Pa.
double write_field_pgm(std::ostream& out, const FieldGrid& field, std::string_view config_hash);

void write_phase_plan_csv(std::ostream& out, const ArrayLayout& layout, const PhasePlan& plan);

// Frame schedule binary, little-endian:
//   "FSCH" | version u32 | control_rate_hz f64 | transducer_count u32 | frame_count u32
//   then per frame: timestamp f64 | phases f32[count] | amplitudes f32[count]
inline constexpr std::uint32_t kScheduleVersion = 1;
void write_schedule_binary(std::ostream& out, const FrameSchedule& schedule);
/// Phases and amplitudes come back rounded to float precision.
FrameSchedule read_schedule_binary(std::istream& in);

/// Lossless CSV: "frame,timestamp_s,index,phase_rad,amplitude", 17 significant digits.
void write_schedule_csv(std::ostream& out, const FrameSchedule& schedule, std::string_view config_hash);

/// Two-column "angle_deg,gain" table; a header line and '#' comments are skipped.
TableDirectivity read_directivity_csv(std::istream& in);

}  // namespace ultrafocus
