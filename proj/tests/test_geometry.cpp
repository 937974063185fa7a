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

#include "ultrafocus/geometry.hpp"

#include <cmath>
#include <random>

using namespace ultrafocus;

TEST_SUITE("geometry") {

TEST_CASE("build_array: single element at the origin") {
  DeviceSpec d{1, 1, 0.01, Pose{}};
  const auto layout = build_array(std::span<const DeviceSpec>(&d, 1), 6.0);
  REQUIRE(layout.size() == 1);
  CHECK(layout[0].pose.position.norm() == doctest::Approx(0.0));
  CHECK((layout[0].pose.normal - Vec3::UnitZ()).norm() == doctest::Approx(0.0));
  CHECK(layout[0].pose.source_pressure == 6.0);
  CHECK_FALSE(layout.has_images());
}

TEST_CASE("build_array: 2x2 lattice is centered on the device origin") {
  DeviceSpec d{2, 2, 0.01, Pose{}};
  const auto layout = build_array(std::span<const DeviceSpec>(&d, 1), 1.0);
  REQUIRE(layout.size() == 4);
  for (const auto& t : layout.transducers()) {
    CHECK(std::abs(t.pose.position.x()) == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(std::abs(t.pose.position.y()) == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(t.pose.position.z() == 0.0);
  }
}

TEST_CASE("build_array: 20 degree tilt about x") {
  DeviceSpec d{1, 1, 0.01, Pose::from_euler_deg(Vec3::Zero(), Vec3(20.0, 0.0, 0.0))};
  const auto layout = build_array(std::span<const DeviceSpec>(&d, 1), 1.0);
  const Vec3 n = layout[0].pose.normal;
  // Rx(20 deg) applied to +z by hand: (0, -sin 20, cos 20).
  CHECK(n.x() == doctest::Approx(0.0));
  CHECK(n.y() == doctest::Approx(-0.3420201433256687).epsilon(1e-12));
  CHECK(n.z() == doctest::Approx(0.9396926207859084).epsilon(1e-12));
}

TEST_CASE("build_array: count is the sum of rows x cols and devices are numbered in order") {
  std::vector<DeviceSpec> devices{{14, 18, 10.16e-3, Pose{}},
                                  {3, 5, 0.01, Pose::from_euler_deg(Vec3(0.3, 0, 0), Vec3(0, 10, 0))},
                                  {1, 7, 0.02, Pose{}}};
  const auto layout = build_array(devices, 1.0);
  CHECK(layout.size() == 14 * 18 + 3 * 5 + 7);
  CHECK(layout[0].device == 0);
  CHECK(layout[14 * 18].device == 1);
  CHECK(layout[layout.size() - 1].device == 2);
}

TEST_CASE("build_array: invalid specs are configuration errors") {
  std::vector<DeviceSpec> zero_rows{{0, 3, 0.01, Pose{}}};
  std::vector<DeviceSpec> zero_cols{{3, 0, 0.01, Pose{}}};
  std::vector<DeviceSpec> bad_pitch{{3, 3, 0.0, Pose{}}};
  std::vector<DeviceSpec> negative_pitch{{3, 3, -0.01, Pose{}}};
  CHECK_THROWS_AS(build_array(zero_rows, 1.0), ConfigError);
  CHECK_THROWS_AS(build_array(zero_cols, 1.0), ConfigError);
  CHECK_THROWS_AS(build_array(bad_pitch, 1.0), ConfigError);
  CHECK_THROWS_AS(build_array(negative_pitch, 1.0), ConfigError);
  std::vector<DeviceSpec> ok{{1, 1, 0.01, Pose{}}};
  CHECK_THROWS_AS(build_array(ok, 0.0), ConfigError);
}

TEST_CASE("apply_mirror: reflection formula and bookkeeping") {
  const auto layout = testing::single_source(Vec3(0.02, 0.0, -0.1), Vec3(0.0, 0.6, 0.8));
  const auto mirrored = apply_mirror(layout, MirrorPlane{Vec3::Zero(), Vec3::UnitZ(), 0.7});
  REQUIRE(mirrored.size() == 2);
  CHECK(mirrored.has_images());
  CHECK(mirrored.real_count() == 1);
  CHECK_FALSE(mirrored[0].is_image);
  CHECK(mirrored[1].is_image);
  CHECK((mirrored[1].pose.position - Vec3(0.02, 0.0, 0.1)).norm() < 1e-15);
  CHECK((mirrored[1].pose.normal - Vec3(0.0, 0.6, -0.8)).norm() < 1e-15);
  CHECK(mirrored[1].pose.gain == doctest::Approx(0.7));
  CHECK(mirrored[1].device == mirrored[0].device);
  CHECK(mirrored.physical_index(1) == 0);
  CHECK(mirrored.mirror_coefficient() == 0.7);
}

TEST_CASE("apply_mirror: on-axis image") {
  const auto mirrored = apply_mirror(testing::single_source(Vec3(0, 0, -0.1)), MirrorPlane{});
  CHECK((mirrored[1].pose.position - Vec3(0, 0, 0.1)).norm() < 1e-15);
  CHECK((mirrored[1].pose.normal - Vec3(0, 0, -1)).norm() < 1e-15);
}

TEST_CASE("apply_mirror: coefficient 0 keeps zero-gain images") {
  const auto mirrored = apply_mirror(testing::flat_array(2, 3), MirrorPlane{Vec3(0, 0, 0.1), Vec3::UnitZ(), 0.0});
  CHECK(mirrored.size() == 12);
  for (std::size_t i = 6; i < 12; ++i) CHECK(mirrored[i].pose.gain == 0.0);
}

TEST_CASE("apply_mirror: double application and bad planes are rejected") {
  const auto once = apply_mirror(testing::flat_array(1, 2), MirrorPlane{});
  CHECK_THROWS_AS(apply_mirror(once, MirrorPlane{}), ConfigError);
  CHECK_THROWS_AS(apply_mirror(testing::flat_array(1, 2), MirrorPlane{Vec3::Zero(), Vec3(0, 0, 2), 1.0}), ConfigError);
  CHECK_THROWS_AS(apply_mirror(testing::flat_array(1, 2), MirrorPlane{Vec3::Zero(), Vec3::UnitZ(), 1.5}), ConfigError);
}

TEST_CASE("property: reflection is an involution on positions") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int trial = 0; trial < 500; ++trial) {
    const MirrorPlane plane{Vec3(u(rng), u(rng), u(rng)), testing::random_unit(rng), 1.0};
    const Vec3 p(u(rng), u(rng), u(rng));
    CHECK((plane.reflect_point(plane.reflect_point(p)) - p).norm() <= 1e-12);
    const Vec3 d = testing::random_unit(rng);
    CHECK((plane.reflect_direction(plane.reflect_direction(d)) - d).norm() <= 1e-12);
  }
}

TEST_CASE("property: rigid poses preserve pairwise distances") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-180.0, 180.0), pos(-1.0, 1.0);
  DeviceSpec base{4, 5, 10.16e-3, Pose{}};
  const auto reference = build_array(std::span<const DeviceSpec>(&base, 1), 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    DeviceSpec moved = base;
    moved.pose = Pose::from_euler_deg(Vec3(pos(rng), pos(rng), pos(rng)), Vec3(angle(rng), angle(rng), angle(rng)));
    const auto layout = build_array(std::span<const DeviceSpec>(&moved, 1), 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < layout.size(); ++i) {
      for (std::size_t j = i + 1; j < layout.size(); ++j) {
        const double a = (layout[i].pose.position - layout[j].pose.position).norm();
        const double b = (reference[i].pose.position - reference[j].pose.position).norm();
        worst = std::max(worst, std::abs(a - b));
      }
      CHECK(std::abs(layout[i].pose.normal.norm() - 1.0) < 1e-9);
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("merged_with and translated keep ordering stable") {
  const auto a = testing::flat_array(1, 2);
  const auto b = testing::flat_array(2, 1).translated(Vec3(0, 0, 0.05));
  const auto merged = a.merged_with(b);
  REQUIRE(merged.size() == 4);
  CHECK(merged[0].pose.position == a[0].pose.position);
  CHECK(merged[3].pose.position == b[1].pose.position);
  CHECK(merged[2].device == 1);
  CHECK_THROWS_AS(apply_mirror(a, MirrorPlane{}).merged_with(b), ConfigError);
}

}  // TEST_SUITE
