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

#include "ultrafocus/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ultrafocus {
namespace {

constexpr double kUnitTolerance = 1e-9;

void require_unit(const Vec3& v, const char* what) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTolerance) {
    throw ConfigError(std::string(what) + " must be a unit vector");
  }
}

}  // namespace

Pose Pose::from_euler_deg(const Vec3& position, const Vec3& euler_deg) {
  const Vec3 rad = euler_deg * (std::numbers::pi / 180.0);
  Pose pose;
  pose.rotation = (Eigen::AngleAxisd(rad.z(), Vec3::UnitZ()) *
                   Eigen::AngleAxisd(rad.y(), Vec3::UnitY()) *
                   Eigen::AngleAxisd(rad.x(), Vec3::UnitX()))
                      .toRotationMatrix();
  pose.translation = position;
  return pose;
}

void DeviceSpec::validate() const {
  if (rows < 1 || cols < 1) {
    throw ConfigError("device lattice needs rows >= 1 and cols >= 1");
  }
  if (!(pitch > 0.0) || !std::isfinite(pitch)) {
    throw ConfigError("device pitch must be positive");
  }
  const Mat3 rtr = pose.rotation.transpose() * pose.rotation;
  if (!pose.rotation.allFinite() || !rtr.isIdentity(1e-9) || pose.rotation.determinant() < 0.0) {
    throw ConfigError("device pose rotation must be a proper rotation");
  }
  if (!pose.translation.allFinite()) {
    throw ConfigError("device position must be finite");
  }
}

std::vector<Vec3> DeviceSpec::lattice() const {
  std::vector<Vec3> points;
  points.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  const double x0 = 0.5 * (cols - 1) * pitch;
  const double y0 = 0.5 * (rows - 1) * pitch;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      points.emplace_back(c * pitch - x0, r * pitch - y0, 0.0);
    }
  }
  return points;
}

void MirrorPlane::validate() const {
  require_unit(normal, "mirror normal");
  if (!point.allFinite()) throw ConfigError("mirror point must be finite");
  if (!(coefficient >= 0.0 && coefficient <= 1.0)) {
    throw ConfigError("mirror coefficient must lie in [0, 1]");
  }
}

Vec3 MirrorPlane::reflect_point(const Vec3& p) const {
  return p - 2.0 * signed_distance(p) * normal;
}

Vec3 MirrorPlane::reflect_direction(const Vec3& d) const {
  return d - 2.0 * d.dot(normal) * normal;
}

ArrayLayout::ArrayLayout(std::vector<Transducer> transducers) : transducers_(std::move(transducers)) {
  for (const auto& t : transducers_) {
    if (t.is_image) throw ConfigError("image sources can only be added by apply_mirror");
    require_unit(t.pose.normal, "transducer normal");
    if (!(t.pose.gain >= 0.0)) throw ConfigError("transducer gain must be >= 0");
    if (!(t.pose.source_pressure > 0.0)) throw ConfigError("source pressure must be > 0");
  }
}

ArrayLayout ArrayLayout::merged_with(const ArrayLayout& other) const {
  if (has_images() || other.has_images()) {
    throw ConfigError("cannot merge layouts that carry image sources");
  }
  int device_offset = 0;
  for (const auto& t : transducers_) device_offset = std::max(device_offset, t.device + 1);
  std::vector<Transducer> all = transducers_;
  for (auto t : other.transducers_) {
    t.device += device_offset;
    all.push_back(t);
  }
  return ArrayLayout(std::move(all));
}

ArrayLayout ArrayLayout::translated(const Vec3& offset) const {
  ArrayLayout out = *this;
  for (auto& t : out.transducers_) t.pose.position += offset;
  if (out.mirror_) out.mirror_->point += offset;
  return out;
}

ArrayLayout ArrayLayout::scaled(double factor) const {
  if (!(factor > 0.0)) throw ConfigError("scale factor must be > 0");
  ArrayLayout out = *this;
  for (auto& t : out.transducers_) t.pose.source_pressure *= factor;
  return out;
}

ArrayLayout build_array(std::span<const DeviceSpec> devices, double source_pressure) {
  if (!(source_pressure > 0.0) || !std::isfinite(source_pressure)) {
    throw ConfigError("source pressure must be > 0");
  }
  std::vector<Transducer> transducers;
  int device_id = 0;
  for (const auto& spec : devices) {
    spec.validate();
    const Vec3 normal = (spec.pose.rotation * Vec3::UnitZ()).normalized();
    for (const auto& local : spec.lattice()) {
      transducers.push_back({TransducerPose{spec.pose.apply(local), normal, 1.0, source_pressure},
                             device_id, false});
    }
    ++device_id;
  }
  return ArrayLayout(std::move(transducers));
}

ArrayLayout apply_mirror(const ArrayLayout& layout, const MirrorPlane& plane) {
  plane.validate();
  if (layout.has_images()) {
    throw ConfigError("layout already carries image sources; multi-bounce reflection is not modeled");
  }
  ArrayLayout out = layout;
  out.transducers_.reserve(2 * layout.size());
  for (const auto& t : layout.transducers_) {
    Transducer image = t;
    image.pose.position = plane.reflect_point(t.pose.position);
    image.pose.normal = plane.reflect_direction(t.pose.normal);
    image.pose.gain = t.pose.gain * plane.coefficient;
    image.is_image = true;
    out.transducers_.push_back(image);
  }
  out.mirror_ = plane;
  return out;
}

}  // namespace ultrafocus
