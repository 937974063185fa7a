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

#include <Eigen/Geometry>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ultrafocus {

/// Rigid transform: x_world = rotation * x_local + translation.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& local) const { return rotation * local + translation; }

  /// Rotation R = Rz(gamma) * Ry(beta) * Rx(alpha) for euler_deg = {alpha, beta, gamma}.
  static Pose from_euler_deg(const Vec3& position, const Vec3& euler_deg);
};

struct TransducerPose {
  Vec3 position = Vec3::Zero();   // m
  Vec3 normal = Vec3::UnitZ();    // emission axis, unit length
  double gain = 1.0;              // amplitude factor, >= 0
  double source_pressure = 1.0;   // Pa at 1 m on axis
};

/// A rows x cols lattice of transducers centered on the device origin.
/// Local +x runs along columns, local +y along rows, local +z is the emission axis.
struct DeviceSpec {
  int rows = 14;
  int cols = 18;
  double pitch = 10.16e-3;
  Pose pose;

  std::vector<Vec3> lattice() const;
  void validate() const;
};

struct MirrorPlane {
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  double coefficient = 1.0;

  void validate() const;
  Vec3 reflect_point(const Vec3& p) const;
  Vec3 reflect_direction(const Vec3& d) const;
  /// Signed distance along the plane normal.
  double signed_distance(const Vec3& p) const { return (p - point).dot(normal); }
};

struct Transducer {
  TransducerPose pose;
  int device = 0;
  bool is_image = false;
};

/// Ordered set of transducers across all devices, optionally extended by the
/// image sources of one acoustic mirror. When a mirror is applied, entry
/// k + real_count() is the image of entry k.
class ArrayLayout {
 public:
  ArrayLayout() = default;
  explicit ArrayLayout(std::vector<Transducer> transducers);

  std::size_t size() const noexcept { return transducers_.size(); }
  bool empty() const noexcept { return transducers_.empty(); }
  const Transducer& operator[](std::size_t i) const { return transducers_[i]; }
  std::span<const Transducer> transducers() const noexcept { return transducers_; }

  bool has_images() const noexcept { return mirror_.has_value(); }
  std::size_t real_count() const noexcept {
    return has_images() ? transducers_.size() / 2 : transducers_.size();
  }
  /// Index of the physical element that emits for entry i.
  std::size_t physical_index(std::size_t i) const noexcept {
    return i < real_count() ? i : i - real_count();
  }
  const std::optional<MirrorPlane>& mirror() const noexcept { return mirror_; }
  double mirror_coefficient() const noexcept { return mirror_ ? mirror_->coefficient : 0.0; }

  /// Concatenation (devices of `other` are renumbered after this layout's).
  /// Neither operand may carry image sources.
  ArrayLayout merged_with(const ArrayLayout& other) const;
  ArrayLayout translated(const Vec3& offset) const;
  /// Copy with every source_pressure multiplied by `factor`.
  ArrayLayout scaled(double factor) const;

 private:
  friend ArrayLayout apply_mirror(const ArrayLayout&, const MirrorPlane&);

  std::vector<Transducer> transducers_;
  std::optional<MirrorPlane> mirror_;
};

ArrayLayout build_array(std::span<const DeviceSpec> devices, double source_pressure);

/// Appends one image source per transducer (single bounce). Throws ConfigError
/// if the layout already carries image sources.
ArrayLayout apply_mirror(const ArrayLayout& layout, const MirrorPlane& plane);

}  // namespace ultrafocus
