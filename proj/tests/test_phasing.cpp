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

#include <doctest.h>

#include "test_support.hpp"

#include "ultrafocus/field.hpp"
#include "ultrafocus/phasing.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace ultrafocus;
using std::numbers::pi;

namespace {

// (-k * 0.2) mod 2*pi with k = 2*pi*40000/340, evaluated at 30 digits.
constexpr double kPhaseAt200mm = 2.956793085731570107;
// 2*pi / 256.
constexpr double kStep8 = 0.02454369260617026;

double circular_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2.0 * pi);
  return std::min(d, 2.0 * pi - d);
}

}  // namespace

TEST_SUITE("phasing") {

TEST_CASE("solve_focus: single element on axis") {
  const auto plan = solve_focus(testing::single_source(Vec3::Zero()), Vec3(0, 0, 0.2), Medium{});
  REQUIRE(plan.size() == 1);
  CHECK(plan.phases[0] == doctest::Approx(kPhaseAt200mm).epsilon(1e-12));
  CHECK(plan.amplitudes[0] == 1.0);
  REQUIRE(plan.focus_hint.has_value());
  CHECK(*plan.focus_hint == Vec3(0, 0, 0.2));
}

TEST_CASE("solve_focus: equidistant elements get equal phases") {
  const ArrayLayout pair({{TransducerPose{Vec3(-0.03, 0, 0)}, 0, false}, {TransducerPose{Vec3(0.03, 0, 0)}, 0, false}});
  const auto plan = solve_focus(pair, Vec3(0, 0.01, 0.2), Medium{});
  CHECK(plan.phases[0] == plan.phases[1]);
}

TEST_CASE("solve_focus: every term arrives in phase") {
  const auto layout = testing::flat_array(6, 8, 10.16e-3, 6.0);
  const Vec3 focus(0.012, -0.02, 0.18);
  const Medium m{};
  const auto plan = solve_focus(layout, focus, m);
  const PistonDirectivity d{};
  double expected = 0.0;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const Vec3 v = focus - layout[i].pose.position;
    const double r = v.norm();
    const double arg = std::fmod(m.wavenumber() * r + plan.phases[i], 2.0 * pi);
    CHECK(circular_distance(arg, 0.0) <= 1e-9);
    expected += layout[i].pose.source_pressure * directivity_gain(d, std::acos(v.normalized().dot(layout[i].pose.normal)), m.wavenumber()) / r;
  }
  CHECK(std::abs(pressure_at(layout, plan, focus, m, d)) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("solve_focus: focus on a source is a singularity") {
  const auto layout = testing::flat_array(2, 2, 0.01);
  CHECK_THROWS_AS(solve_focus(layout, layout[3].pose.position + Vec3(0, 0, 0.0009), Medium{}), SingularityError);
}

TEST_CASE("solve_focus: image entries share the phase of their element") {
  const auto real = testing::flat_array(2, 3).translated(Vec3(0, 0, 0.1));
  const MirrorPlane plane{Vec3::Zero(), Vec3::UnitZ(), 1.0};
  const auto layout = apply_mirror(real, plane);
  const Vec3 focus(0.0, 0.0, 0.06);
  const Medium m{};
  const auto via = solve_focus(layout, focus, m, ReflectionPhasing::kViaMirror);
  const auto direct = solve_focus(layout, focus, m, ReflectionPhasing::kDirect);
  const std::size_t n = real.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(via.phases[i] == via.phases[i + n]);
    CHECK(direct.phases[i] == direct.phases[i + n]);
    CHECK(circular_distance(via.phases[i], wrap_phase(-m.wavenumber() * (layout[i + n].pose.position - focus).norm())) <= 1e-12);
    CHECK(circular_distance(direct.phases[i], wrap_phase(-m.wavenumber() * (layout[i].pose.position - focus).norm())) <= 1e-12);
  }
}

TEST_CASE("property: focus dominance over random phase plans") {
  std::mt19937_64 rng(41);
  const auto layout = testing::flat_array(4, 5);
  const Vec3 focus(0.005, 0.01, 0.15);
  const auto best = std::abs(pressure_at(layout, solve_focus(layout, focus, Medium{}), focus, Medium{}, PistonDirectivity{}));
  std::uniform_real_distribution<double> ph(0.0, 2.0 * pi);
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    PhasePlan plan = PhasePlan::uniform(layout.size());
    for (auto& p : plan.phases) p = ph(rng);
    worst_ratio = std::max(worst_ratio, std::abs(pressure_at(layout, plan, focus, Medium{}, PistonDirectivity{})) / best);
  }
  CHECK(worst_ratio <= 1.0);
}

TEST_CASE("property: translation equivariance") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> off(-0.2, 0.2);
  const auto layout = testing::flat_array(5, 5);
  const Vec3 focus(0.01, 0.0, 0.2);
  const auto base = solve_focus(layout, focus, Medium{});
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 t(off(rng), off(rng), off(rng));
    const auto moved = solve_focus(layout.translated(t), focus + t, Medium{});
    double worst = 0.0;
    for (std::size_t i = 0; i < layout.size(); ++i) worst = std::max(worst, circular_distance(moved.phases[i], base.phases[i]));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("quantize_phases: lattice examples") {
  PhasePlan plan = PhasePlan::uniform(4);
  plan.phases = {pi, 0.01, 2.0 * pi - 0.001, 1.0};
  const auto q8 = quantize_phases(plan, 8);
  CHECK(q8.phases[0] == pi);
  CHECK(q8.phases[1] == 0.0);
  CHECK(q8.phases[2] == 0.0);
  CHECK(q8.phases[3] == doctest::Approx(41 * kStep8));
  CHECK(2.0 * pi / 256.0 == kStep8);
  const auto q1 = quantize_phases(plan, 1);
  for (double p : q1.phases) CHECK((p == 0.0 || p == pi));
  CHECK_THROWS_AS(quantize_phases(plan, 0), ConfigError);
  CHECK_THROWS_AS(quantize_phases(plan, 17), ConfigError);
}

TEST_CASE("property: quantization is idempotent and bounded") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * pi);
  for (int bits = 1; bits <= 16; ++bits) {
    PhasePlan plan = PhasePlan::uniform(200);
    for (auto& p : plan.phases) p = ph(rng);
    const auto q = quantize_phases(plan, bits);
    CHECK(quantize_phases(q, bits).phases == q.phases);
    const double step = 2.0 * pi / std::ldexp(1.0, bits);
    for (std::size_t i = 0; i < plan.size(); ++i) {
      CHECK(q.phases[i] >= 0.0);
      CHECK(q.phases[i] < 2.0 * pi);
      CHECK(circular_distance(q.phases[i], plan.phases[i]) <= 0.5 * step + 1e-12);
    }
  }
}

TEST_CASE("8-bit quantization keeps the focal pressure") {
  const auto layout = testing::flat_array(14, 18);
  const Vec3 focus(0.01, -0.015, 0.2);
  const auto plan = solve_focus(layout, focus, Medium{});
  const double exact = std::abs(pressure_at(layout, plan, focus, Medium{}, PistonDirectivity{}));
  const double coarse = std::abs(pressure_at(layout, quantize_phases(plan, 8), focus, Medium{}, PistonDirectivity{}));
  CHECK(coarse >= 0.999 * exact);
}

TEST_CASE("phase plan validation") {
  PhasePlan plan = PhasePlan::uniform(3);
  CHECK_NOTHROW(plan.validate(3));
  CHECK_THROWS_AS(plan.validate(4), ConfigError);
  plan.phases[1] = 2.0 * pi;
  CHECK_THROWS_AS(plan.validate(3), ConfigError);
  plan.phases[1] = 0.0;
  plan.amplitudes[2] = 1.5;
  CHECK_THROWS_AS(plan.validate(3), ConfigError);
  CHECK(wrap_phase(-0.5) == doctest::Approx(2.0 * pi - 0.5));
  CHECK(wrap_phase(2.0 * pi) == 0.0);
}

}  // TEST_SUITE
