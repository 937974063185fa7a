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
#include "ultrafocus/common.hpp"
#include "ultrafocus/geometry.hpp"
#include "ultrafocus/phasing.hpp"

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace ultrafocus {

using Complex = std::complex<double>;

struct GridAxis {
  Vec3 direction = Vec3::UnitX();  // unit length
  std::size_t count = 1;
  double spacing = 1e-3;           // m
};

/// Rectilinear sampling lattice embedded in 3-D. Axis 0 varies fastest in the
/// linear sample index.
struct GridSpec {
  Vec3 origin = Vec3::Zero();
  std::vector<GridAxis> axes;

  /// Lattice whose midpoint sits at `center`.
  static GridSpec centered(const Vec3& center, std::vector<GridAxis> axes);

  void validate() const;
  std::size_t size() const noexcept;
  std::size_t count(std::size_t axis) const noexcept { return axis < axes.size() ? axes[axis].count : 1; }
  std::size_t linear_index(std::size_t i, std::size_t j, std::size_t k = 0) const noexcept {
    return i + count(0) * (j + count(1) * k);
  }
  /// Per-axis index of a linear sample index.
  std::array<std::size_t, 3> unravel(std::size_t index) const noexcept;
  Vec3 point(std::size_t index) const;
  /// Coordinate of `p` along `axis`, measured from the origin.
  double coordinate(const Vec3& p, std::size_t axis) const { return (p - origin).dot(axes[axis].direction); }
};

struct FieldGrid {
  GridSpec spec;
  std::vector<Complex> pressure;  // Pa
  std::vector<double> radiation;  // Pa, empty until radiation_pressure() runs
};

enum class SummationPath {
  kNaive,      // pressure_at per sample
  kOptimized,  // precomputed source table, real arithmetic, closed-form directivity
};

struct FieldOptions {
  unsigned threads = 1;
  SummationPath path = SummationPath::kOptimized;
};

/// Coherent point-source sum
///   p(x) = sum_i gain_i amp_i P0_i D(theta_i) exp(j (k r_i + phase_i)) / r_i.
Complex pressure_at(const ArrayLayout& layout, const PhasePlan& plan, const Vec3& point,
                    const Medium& medium, const Directivity& directivity);

/// Pressure at arbitrary points. Samples are partitioned across workers; the
/// per-sample summation order never depends on the worker count.
std::vector<Complex> evaluate_points(const ArrayLayout& layout, const PhasePlan& plan,
                                     std::span<const Vec3> points, const Medium& medium,
                                     const Directivity& directivity, const FieldOptions& options = {});

FieldGrid field_on_grid(const ArrayLayout& layout, const PhasePlan& plan, const GridSpec& grid,
                        const Medium& medium, const Directivity& directivity,
                        const FieldOptions& options = {});

/// factor * |p|^2 / (rho c^2).
double radiation_from_pressure(Complex pressure, const Medium& medium, double reflection_factor);

FieldGrid radiation_pressure(FieldGrid field, const Medium& medium, double reflection_factor = 2.0);

}  // namespace ultrafocus
