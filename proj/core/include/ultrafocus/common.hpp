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

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ultrafocus {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Sources closer than this to an evaluation point are treated as singular.
inline constexpr double kSingularityRadius = 1e-3;

/// Invalid user-supplied configuration (bad layout, medium, trajectory, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An evaluation point fell within kSingularityRadius of a point source.
class SingularityError : public std::domain_error {
 public:
  SingularityError(const std::string& what, std::size_t source_index,
                   std::size_t sample_index = npos)
      : std::domain_error(what), source_index_(source_index), sample_index_(sample_index) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t source_index() const noexcept { return source_index_; }
  /// Grid sample that triggered the error, or npos for single-point evaluation.
  std::size_t sample_index() const noexcept { return sample_index_; }

 private:
  std::size_t source_index_;
  std::size_t sample_index_;
};

/// A metric could not be extracted from the sampled field.
class MetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ultrafocus
