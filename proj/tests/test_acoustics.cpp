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

#include "ultrafocus/acoustics.hpp"
#include "ultrafocus/field.hpp"
#include "ultrafocus/phasing.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace ultrafocus;
using std::numbers::pi;

namespace {

// 2*pi*40000/340, evaluated at 30 digits.
constexpr double kWavenumber = 739.198271432892526697;
// x = k * 4.5 mm * sin 30 deg and 2 J1(x) / x, evaluated at 30 digits.
constexpr double kPistonX = 1.663196110724008185;
constexpr double kPistonGain = 0.691857243393022226;

double relative(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ArrayLayout random_layout(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> xy(-0.1, 0.1), z(-0.05, 0.0);
  std::vector<Transducer> ts;
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 normal = testing::random_unit(rng);
    if (normal.z() < 0) normal.z() = -normal.z();
    ts.push_back({TransducerPose{Vec3(xy(rng), xy(rng), z(rng)), normal, 1.0, 1.0 + 0.1 * static_cast<double>(i % 7)},
                  static_cast<int>(i % 3), false});
  }
  return ArrayLayout(std::move(ts));
}

PhasePlan random_plan(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> ph(0.0, 2.0 * pi), amp(0.0, 1.0);
  PhasePlan plan = PhasePlan::uniform(n);
  for (std::size_t i = 0; i < n; ++i) {
    plan.phases[i] = ph(rng);
    plan.amplitudes[i] = amp(rng);
  }
  return plan;
}

std::vector<Vec3> random_points(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> xy(-0.15, 0.15), z(0.05, 0.35);
  std::vector<Vec3> pts(n);
  for (auto& p : pts) p = Vec3(xy(rng), xy(rng), z(rng));
  return pts;
}

}  // namespace

TEST_SUITE("acoustics") {

TEST_CASE("medium derives the wavenumber") {
  CHECK(Medium{}.wavenumber() == doctest::Approx(kWavenumber).epsilon(1e-15));
  CHECK_THROWS_AS((Medium{0.0, 1.2, 40000}.validate()), ConfigError);
  CHECK_THROWS_AS((Medium{340, -1.0, 40000}.validate()), ConfigError);
}

TEST_CASE("independent J1 oracle agrees with the frozen piston constant") {
  const double x = kWavenumber * 4.5e-3 * 0.5;
  CHECK(x == doctest::Approx(kPistonX).epsilon(1e-15));
  CHECK(2.0 * testing::bessel_j1_integral(kPistonX) / kPistonX == doctest::Approx(kPistonGain).epsilon(1e-14));
}

TEST_CASE("directivity_gain") {
  const double k = Medium{}.wavenumber();
  CHECK(directivity_gain(OmniDirectivity{}, 1.2, k) == 1.0);
  CHECK(directivity_gain(PistonDirectivity{4.5e-3}, 0.0, k) == 1.0);
  CHECK(directivity_gain(PistonDirectivity{4.5e-3}, pi / 6, k) == doctest::Approx(kPistonGain).epsilon(1e-13));
  CHECK(jinc(0.0) == 1.0);
  CHECK_THROWS_AS(directivity_gain(OmniDirectivity{}, -0.1, k), ConfigError);
  CHECK_THROWS_AS(directivity_gain(OmniDirectivity{}, 4.0, k), ConfigError);
}

TEST_CASE("piston gain matches the integral oracle across angles") {
  const double k = Medium{}.wavenumber();
  for (int deg = 1; deg <= 180; deg += 7) {
    const double theta = deg * pi / 180.0;
    const double x = k * 4.5e-3 * std::sin(theta);
    const double expected = std::abs(2.0 * testing::bessel_j1_integral(x) / x);
    CHECK(directivity_gain(PistonDirectivity{4.5e-3}, theta, k) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("table directivity interpolates and clamps") {
  const TableDirectivity t{{0.0, 30.0, 60.0, 90.0}, {1.0, 0.8, 0.4, 0.1}};
  CHECK(directivity_gain(t, 0.0, 1.0) == 1.0);
  CHECK(directivity_gain(t, 15.0 * pi / 180.0, 1.0) == doctest::Approx(0.9));
  CHECK(directivity_gain(t, 45.0 * pi / 180.0, 1.0) == doctest::Approx(0.6));
  CHECK(directivity_gain(t, 120.0 * pi / 180.0, 1.0) == doctest::Approx(0.1));
  CHECK_THROWS_AS(validate(Directivity{TableDirectivity{{0.0, 30.0, 20.0}, {1.0, 0.5, 0.2}}}), ConfigError);
  CHECK_THROWS_AS(validate(Directivity{TableDirectivity{{0.0, 30.0}, {0.9, 0.5}}}), ConfigError);
  CHECK_THROWS_AS(validate(Directivity{TableDirectivity{{0.0, 30.0}, {1.0, 1.5}}}), ConfigError);
  CHECK_THROWS_AS(validate(Directivity{TableDirectivity{{0.0}, {1.0, 0.5}}}), ConfigError);
  CHECK_THROWS_AS(validate(Directivity{PistonDirectivity{0.0}}), ConfigError);
}

TEST_CASE("pressure_at: reference distance and 1/r law") {
  const auto layout = testing::single_source(Vec3::Zero());
  const auto plan = PhasePlan::uniform(1);
  CHECK(std::abs(pressure_at(layout, plan, Vec3(0, 0, 1), Medium{}, OmniDirectivity{})) == doctest::Approx(1.0));
  CHECK(std::abs(pressure_at(layout, plan, Vec3(0, 0, 2), Medium{}, PistonDirectivity{})) == doctest::Approx(0.5));
}

TEST_CASE("pressure_at: symmetric pair adds coherently on axis") {
  const ArrayLayout pair({{TransducerPose{Vec3(-0.01, 0, 0)}, 0, false}, {TransducerPose{Vec3(0.01, 0, 0)}, 0, false}});
  const auto one = testing::single_source(Vec3(0.01, 0, 0));
  const Vec3 p(0, 0, 0.2);
  const double single = std::abs(pressure_at(one, PhasePlan::uniform(1), p, Medium{}, PistonDirectivity{}));
  CHECK(std::abs(pressure_at(pair, PhasePlan::uniform(2), p, Medium{}, PistonDirectivity{})) ==
        doctest::Approx(2.0 * single).epsilon(1e-14));
}

TEST_CASE("pressure_at: singularity guard") {
  const auto layout = testing::flat_array(2, 2, 0.01);
  const auto plan = PhasePlan::uniform(4);
  CHECK_THROWS_AS(pressure_at(layout, plan, layout[2].pose.position + Vec3(0, 0, 5e-4), Medium{}, OmniDirectivity{}),
                  SingularityError);
  try {
    pressure_at(layout, plan, layout[2].pose.position, Medium{}, OmniDirectivity{});
    FAIL("expected a singularity");
  } catch (const SingularityError& e) {
    CHECK(e.source_index() == 2);
    CHECK(e.sample_index() == SingularityError::npos);
  }
}

TEST_CASE("field_on_grid reports the offending sample") {
  const auto layout = testing::single_source(Vec3::Zero());
  GridSpec g{Vec3(-0.002, -0.002, 0.0), {{Vec3::UnitX(), 5, 1e-3}, {Vec3::UnitY(), 5, 1e-3}}};
  for (auto path : {SummationPath::kNaive, SummationPath::kOptimized}) {
    try {
      field_on_grid(layout, PhasePlan::uniform(1), g, Medium{}, OmniDirectivity{}, {1, path});
      FAIL("expected a singularity");
    } catch (const SingularityError& e) {
      CHECK(e.source_index() == 0);
      // First sample within 1 mm of the source: (0, -1) mm, linear index 2 + 5 * 1.
      CHECK(e.sample_index() == 7);
    }
  }
}

TEST_CASE("field_on_grid: 1x1 grid equals pressure_at") {
  const auto layout = testing::flat_array(3, 4);
  const auto plan = solve_focus(layout, Vec3(0.01, 0, 0.15), Medium{});
  const Vec3 p(0.003, -0.002, 0.14);
  GridSpec g{p, {{Vec3::UnitX(), 1, 1e-3}, {Vec3::UnitY(), 1, 1e-3}}};
  const auto field = field_on_grid(layout, plan, g, Medium{}, PistonDirectivity{});
  REQUIRE(field.pressure.size() == 1);
  CHECK(relative(field.pressure[0], pressure_at(layout, plan, p, Medium{}, PistonDirectivity{})) <= 1e-12);
}

TEST_CASE("field_on_grid: x-symmetric layout gives an x-symmetric field") {
  const auto layout = testing::flat_array(4, 6);
  const auto plan = solve_focus(layout, Vec3(0, 0.01, 0.2), Medium{});
  const auto g = GridSpec::centered(Vec3(0, 0.01, 0.2), {{Vec3::UnitX(), 21, 1e-3}, {Vec3::UnitY(), 11, 1e-3}});
  const auto f = field_on_grid(layout, plan, g, Medium{}, PistonDirectivity{});
  double worst = 0.0;
  for (std::size_t j = 0; j < 11; ++j) {
    for (std::size_t i = 0; i < 21; ++i) {
      const double a = std::abs(f.pressure[g.linear_index(i, j)]);
      const double b = std::abs(f.pressure[g.linear_index(20 - i, j)]);
      worst = std::max(worst, std::abs(a - b) / std::max(a, b));
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("radiation_pressure") {
  const Medium m{};
  CHECK(radiation_from_pressure(Complex(0, 0), m, 2.0) == 0.0);
  // 2e6 / (1.2 * 340^2).
  CHECK(radiation_from_pressure(Complex(0, 1000), m, 2.0) == doctest::Approx(14.41753171856978).epsilon(1e-14));
  FieldGrid f;
  f.spec = GridSpec::centered(Vec3::Zero(), {{Vec3::UnitX(), 3, 1e-3}, {Vec3::UnitY(), 1, 1e-3}});
  f.pressure = {Complex(1, 2), Complex(-3, 0.5), Complex(0, 0)};
  const auto once = radiation_pressure(f, m);
  for (auto& p : f.pressure) p *= 2.0;
  const auto twice = radiation_pressure(f, m);
  for (std::size_t i = 0; i < 3; ++i) CHECK(twice.radiation[i] == doctest::Approx(4.0 * once.radiation[i]));
  CHECK(once.radiation[2] == 0.0);
  CHECK_THROWS_AS(radiation_pressure(f, m, -1.0), ConfigError);
}

TEST_CASE("property: optimized path matches the naive sum") {
  std::mt19937_64 rng(20240611);
  const Directivity kinds[] = {OmniDirectivity{}, PistonDirectivity{},
                               TableDirectivity{{0.0, 45.0, 90.0}, {1.0, 0.5, 0.2}}};
  for (int trial = 0; trial < 12; ++trial) {
    const auto layout = random_layout(rng, 40 + 5 * static_cast<std::size_t>(trial));
    const auto plan = random_plan(rng, layout.size());
    const auto pts = random_points(rng, 100);
    const auto& d = kinds[trial % 3];
    const auto fast = evaluate_points(layout, plan, pts, Medium{}, d, {1, SummationPath::kOptimized});
    const auto slow = evaluate_points(layout, plan, pts, Medium{}, d, {1, SummationPath::kNaive});
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, relative(fast[i], slow[i]));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("property: results do not depend on the worker count") {
  std::mt19937_64 rng(5);
  const auto layout = random_layout(rng, 64);
  const auto plan = random_plan(rng, layout.size());
  const auto pts = random_points(rng, 257);
  for (auto path : {SummationPath::kNaive, SummationPath::kOptimized}) {
    const auto one = evaluate_points(layout, plan, pts, Medium{}, PistonDirectivity{}, {1, path});
    for (unsigned threads : {2u, 3u, 8u}) {
      CHECK(evaluate_points(layout, plan, pts, Medium{}, PistonDirectivity{}, {threads, path}) == one);
    }
  }
}

TEST_CASE("property: global phase invariance") {
  std::mt19937_64 rng(17);
  const auto layout = random_layout(rng, 50);
  auto plan = random_plan(rng, layout.size());
  const auto pts = random_points(rng, 100);
  const auto before = evaluate_points(layout, plan, pts, Medium{}, PistonDirectivity{});
  for (auto& ph : plan.phases) ph = wrap_phase(ph + 1.234);
  const auto after = evaluate_points(layout, plan, pts, Medium{}, PistonDirectivity{});
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(std::abs(std::abs(after[i]) - std::abs(before[i])) <= 1e-12 * std::abs(before[i]));
  }
}

TEST_CASE("property: linearity over layout union") {
  std::mt19937_64 rng(23);
  const auto a = random_layout(rng, 30);
  const auto b = random_layout(rng, 25);
  const auto pa = random_plan(rng, a.size());
  const auto pb = random_plan(rng, b.size());
  PhasePlan pu = pa;
  pu.phases.insert(pu.phases.end(), pb.phases.begin(), pb.phases.end());
  pu.amplitudes.insert(pu.amplitudes.end(), pb.amplitudes.begin(), pb.amplitudes.end());
  const auto u = a.merged_with(b);
  for (const auto& p : random_points(rng, 100)) {
    const Complex sum = pressure_at(a, pa, p, Medium{}, PistonDirectivity{}) +
                        pressure_at(b, pb, p, Medium{}, PistonDirectivity{});
    CHECK(relative(pressure_at(u, pu, p, Medium{}, PistonDirectivity{}), sum) <= 1e-12);
  }
}

TEST_CASE("property: mirror equivalence and the zero coefficient") {
  std::mt19937_64 rng(29);
  const auto real = random_layout(rng, 40).translated(Vec3(0, 0, 0.2));
  const MirrorPlane plane{Vec3::Zero(), Vec3::UnitZ(), 0.8};
  const auto mirrored = apply_mirror(real, plane);
  std::vector<Transducer> copy;
  for (const auto& t : real.transducers()) {
    copy.push_back({TransducerPose{plane.reflect_point(t.pose.position), plane.reflect_direction(t.pose.normal),
                                   t.pose.gain * plane.coefficient, t.pose.source_pressure},
                    t.device, false});
  }
  const ArrayLayout reflected(std::move(copy));
  const auto plan = random_plan(rng, real.size());
  PhasePlan both = plan;
  both.phases.insert(both.phases.end(), plan.phases.begin(), plan.phases.end());
  both.amplitudes.insert(both.amplitudes.end(), plan.amplitudes.begin(), plan.amplitudes.end());
  std::uniform_real_distribution<double> xy(-0.1, 0.1), z(0.02, 0.15);
  for (int i = 0; i < 100; ++i) {
    const Vec3 p(xy(rng), xy(rng), z(rng));
    const Complex expected = pressure_at(real, plan, p, Medium{}, PistonDirectivity{}) +
                             pressure_at(reflected, plan, p, Medium{}, PistonDirectivity{});
    CHECK(relative(pressure_at(mirrored, both, p, Medium{}, PistonDirectivity{}), expected) <= 1e-12);
  }
  const auto silent = apply_mirror(real, MirrorPlane{Vec3::Zero(), Vec3::UnitZ(), 0.0});
  for (int i = 0; i < 20; ++i) {
    const Vec3 p(xy(rng), xy(rng), z(rng));
    CHECK(pressure_at(silent, both, p, Medium{}, PistonDirectivity{}) ==
          pressure_at(real, plan, p, Medium{}, PistonDirectivity{}));
  }
}

TEST_CASE("property: reciprocity of distance for omni point sources") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> c(-0.3, 0.3);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a(c(rng), c(rng), c(rng)), b(c(rng), c(rng), c(rng));
    if ((a - b).norm() < 0.01) continue;
    const double ab = std::abs(pressure_at(testing::single_source(a), PhasePlan::uniform(1), b, Medium{}, OmniDirectivity{}));
    const double ba = std::abs(pressure_at(testing::single_source(b), PhasePlan::uniform(1), a, Medium{}, OmniDirectivity{}));
    CHECK(ab == doctest::Approx(ba).epsilon(1e-14));
  }
}

TEST_CASE("grid spec validation") {
  CHECK_THROWS_AS((GridSpec{Vec3::Zero(), {{Vec3::UnitX(), 3, 1e-3}}}.validate()), ConfigError);
  CHECK_THROWS_AS((GridSpec{Vec3::Zero(), {{Vec3::UnitX(), 3, 1e-3}, {Vec3(1, 1, 0).normalized(), 3, 1e-3}}}.validate()),
                  ConfigError);
  CHECK_THROWS_AS((GridSpec{Vec3::Zero(), {{Vec3::UnitX(), 3, 0.0}, {Vec3::UnitY(), 3, 1e-3}}}.validate()), ConfigError);
  const auto g = GridSpec::centered(Vec3(1, 2, 3), {{Vec3::UnitX(), 3, 0.5}, {Vec3::UnitZ(), 5, 0.25}, {Vec3::UnitY(), 2, 1.0}});
  CHECK_NOTHROW(g.validate());
  CHECK(g.size() == 30);
  const auto idx = g.unravel(g.linear_index(2, 3, 1));
  CHECK(idx == std::array<std::size_t, 3>{2, 3, 1});
  CHECK((g.point(g.linear_index(1, 2, 0)) - Vec3(1, 1.5, 3)).norm() < 1e-15);
}

}  // TEST_SUITE
