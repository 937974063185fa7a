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

#include "ultrafocus/field.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <exception>
#include <optional>
#include <string>
#include <thread>

namespace ultrafocus {

GridSpec GridSpec::centered(const Vec3& center, std::vector<GridAxis> axes) {
  GridSpec spec;
  spec.origin = center;
  for (const auto& a : axes) {
    spec.origin -= 0.5 * static_cast<double>(a.count - (a.count > 0 ? 1 : 0)) * a.spacing * a.direction;
  }
  spec.axes = std::move(axes);
  return spec;
}

void GridSpec::validate() const {
  if (axes.size() < 2 || axes.size() > 3) throw ConfigError("grid needs two or three axes");
  if (!origin.allFinite()) throw ConfigError("grid origin must be finite");
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (std::abs(axes[a].direction.norm() - 1.0) > 1e-9) throw ConfigError("grid axes must be unit vectors");
    if (axes[a].count < 1) throw ConfigError("grid axes need at least one sample");
    if (!(axes[a].spacing > 0.0) || !std::isfinite(axes[a].spacing)) {
      throw ConfigError("grid spacing must be positive");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (std::abs(axes[a].direction.dot(axes[b].direction)) > 1e-9) {
        throw ConfigError("grid axes must be mutually orthogonal");
      }
    }
  }
}

std::size_t GridSpec::size() const noexcept {
  if (axes.empty()) return 0;
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.count;
  return n;
}

std::array<std::size_t, 3> GridSpec::unravel(std::size_t index) const noexcept {
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (std::size_t a = 0; a < axes.size(); ++a) {
    idx[a] = index % axes[a].count;
    index /= axes[a].count;
  }
  return idx;
}

Vec3 GridSpec::point(std::size_t index) const {
  const auto idx = unravel(index);
  Vec3 p = origin;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    p += static_cast<double>(idx[a]) * axes[a].spacing * axes[a].direction;
  }
  return p;
}

namespace {

void check_plan(const ArrayLayout& layout, const PhasePlan& plan) {
  if (plan.phases.size() != layout.size() || plan.amplitudes.size() != layout.size()) {
    throw ConfigError("phase plan length " + std::to_string(plan.phases.size()) +
                      " does not match layout size " + std::to_string(layout.size()));
  }
}

[[noreturn]] void throw_singular(std::size_t source, std::size_t sample) {
  std::string msg = "evaluation point within 1 mm of source " + std::to_string(source);
  if (sample != SingularityError::npos) msg += " (sample " + std::to_string(sample) + ")";
  throw SingularityError(msg, source, sample);
}

Complex pressure_at_impl(const ArrayLayout& layout, const PhasePlan& plan, const Vec3& point,
                         const Medium& medium, const Directivity& directivity, std::size_t sample) {
  const double k = medium.wavenumber();
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const auto& t = layout[i].pose;
    const Vec3 d = point - t.position;
    const double r = d.norm();
    if (r <= kSingularityRadius) throw_singular(i, sample);
    const double theta = std::acos(std::clamp(d.dot(t.normal) / r, -1.0, 1.0));
    const double amplitude = t.gain * plan.amplitudes[i] * t.source_pressure *
                             directivity_gain(directivity, theta, k) / r;
    sum += std::polar(amplitude, k * r + plan.phases[i]);
  }
  return sum;
}

// Power series of 2 J1(x) / x in (x/2)^2; accurate to a few ulp for x <= kSeriesLimit.
constexpr double kSeriesLimit = 6.0;
constexpr int kSeriesTerms = 26;

struct JincSeries {
  std::array<double, kSeriesTerms> c{};
  JincSeries() {
    double f = 1.0;  // m! (m+1)!
    for (int m = 0; m < kSeriesTerms; ++m) {
      if (m > 0) f *= static_cast<double>(m) * static_cast<double>(m + 1);
      c[static_cast<std::size_t>(m)] = (m % 2 == 0 ? 1.0 : -1.0) / f;
    }
  }
  double operator()(double x) const {
    if (x > kSeriesLimit) return 2.0 * std::cyl_bessel_j(1.0, x) / x;
    const double y = 0.25 * x * x;
    double acc = c[kSeriesTerms - 1];
    for (int m = kSeriesTerms - 2; m >= 0; --m) acc = acc * y + c[static_cast<std::size_t>(m)];
    return acc;
  }
};

const JincSeries& jinc_series() {
  static const JincSeries series;
  return series;
}

// Structure-of-arrays copy of the layout with the plan folded into complex weights.
struct SourceTable {
  std::vector<double> px, py, pz, nx, ny, nz, wre, wim;

  SourceTable(const ArrayLayout& layout, const PhasePlan& plan) {
    const std::size_t n = layout.size();
    for (auto* v : {&px, &py, &pz, &nx, &ny, &nz, &wre, &wim}) v->resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& t = layout[i].pose;
      px[i] = t.position.x();
      py[i] = t.position.y();
      pz[i] = t.position.z();
      nx[i] = t.normal.x();
      ny[i] = t.normal.y();
      nz[i] = t.normal.z();
      const double w = t.gain * plan.amplitudes[i] * t.source_pressure;
      wre[i] = w * std::cos(plan.phases[i]);
      wim[i] = w * std::sin(plan.phases[i]);
    }
  }
  std::size_t size() const noexcept { return px.size(); }
};

template <typename Gain>
Complex sum_sources(const SourceTable& s, const Vec3& point, double k, Gain&& gain, std::size_t sample) {
  const double x = point.x(), y = point.y(), z = point.z();
  double re = 0.0, im = 0.0;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x - s.px[i], dy = y - s.py[i], dz = z - s.pz[i];
    const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (r <= kSingularityRadius) throw_singular(i, sample);
    const double inv_r = 1.0 / r;
    const double cos_theta = std::clamp((dx * s.nx[i] + dy * s.ny[i] + dz * s.nz[i]) * inv_r, -1.0, 1.0);
    const double a = gain(cos_theta) * inv_r;
    const double kr = k * r;
    const double c = std::cos(kr), sn = std::sin(kr);
    re += a * (s.wre[i] * c - s.wim[i] * sn);
    im += a * (s.wre[i] * sn + s.wim[i] * c);
  }
  return {re, im};
}

Complex pressure_optimized(const SourceTable& s, const Vec3& point, double k,
                           const Directivity& directivity, std::size_t sample) {
  if (std::holds_alternative<OmniDirectivity>(directivity)) {
    return sum_sources(s, point, k, [](double) { return 1.0; }, sample);
  }
  if (const auto* piston = std::get_if<PistonDirectivity>(&directivity)) {
    const double ka = k * piston->aperture_radius;
    const auto& jinc_fast = jinc_series();
    return sum_sources(
        s, point, k,
        [ka, &jinc_fast](double cos_theta) {
          const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
          return std::abs(jinc_fast(ka * sin_theta));
        },
        sample);
  }
  return sum_sources(
      s, point, k,
      [&directivity, k](double cos_theta) { return directivity_gain(directivity, std::acos(cos_theta), k); },
      sample);
}

}  // namespace

Complex pressure_at(const ArrayLayout& layout, const PhasePlan& plan, const Vec3& point,
                    const Medium& medium, const Directivity& directivity) {
  check_plan(layout, plan);
  return pressure_at_impl(layout, plan, point, medium, directivity, SingularityError::npos);
}

std::vector<Complex> evaluate_points(const ArrayLayout& layout, const PhasePlan& plan,
                                     std::span<const Vec3> points, const Medium& medium,
                                     const Directivity& directivity, const FieldOptions& options) {
  check_plan(layout, plan);
  medium.validate();
  validate(directivity);

  std::vector<Complex> out(points.size());
  const double k = medium.wavenumber();
  const bool naive = options.path == SummationPath::kNaive;
  std::optional<SourceTable> table;
  if (!naive) table.emplace(layout, plan);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = naive ? pressure_at_impl(layout, plan, points[i], medium, directivity, i)
                     : pressure_optimized(*table, points[i], k, directivity, i);
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(options.threads == 0 ? 1 : options.threads, 1, std::max<std::size_t>(points.size(), 1));
  if (workers == 1) {
    run_range(0, points.size());
    return out;
  }

  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (points.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(points.size(), w * chunk);
      const std::size_t end = std::min(points.size(), begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          run_range(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  // Chunks are ordered, so the first failing worker holds the lowest failing sample.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

FieldGrid field_on_grid(const ArrayLayout& layout, const PhasePlan& plan, const GridSpec& grid,
                        const Medium& medium, const Directivity& directivity, const FieldOptions& options) {
  grid.validate();
  std::vector<Vec3> points(grid.size());
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = grid.point(i);
  FieldGrid field;
  field.spec = grid;
  field.pressure = evaluate_points(layout, plan, points, medium, directivity, options);
  return field;
}

double radiation_from_pressure(Complex pressure, const Medium& medium, double reflection_factor) {
  return reflection_factor * std::norm(pressure) / (medium.density * medium.speed_of_sound * medium.speed_of_sound);
}

FieldGrid radiation_pressure(FieldGrid field, const Medium& medium, double reflection_factor) {
  medium.validate();
  if (!(reflection_factor >= 0.0)) throw ConfigError("reflection factor must be >= 0");
  field.radiation.resize(field.pressure.size());
  std::transform(field.pressure.begin(), field.pressure.end(), field.radiation.begin(),
                 [&](Complex p) { return radiation_from_pressure(p, medium, reflection_factor); });
  return field;
}

}  // namespace ultrafocus
