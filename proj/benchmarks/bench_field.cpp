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
#include "ultrafocus/phasing.hpp"
#include "ultrafocus/schedule.hpp"
#include "ultrafocus/trajectory.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace ultrafocus;

namespace {

// Four 18x14 panels side by side, the size of the demo scene.
ArrayLayout panels() {
  std::vector<DeviceSpec> devices;
  for (int i = 0; i < 4; ++i) {
    DeviceSpec d;
    d.pose.translation = Vec3((i % 2 == 0 ? -1 : 1) * 0.0915, (i < 2 ? -1 : 1) * 0.0711, 0.0);
    devices.push_back(d);
  }
  return build_array(devices, 6.0);
}

void BM_FieldGrid(benchmark::State& state, SummationPath path) {
  const auto layout = panels();
  const Vec3 focus(0.0, 0.0, 0.2);
  const auto plan = solve_focus(layout, focus, Medium{});
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto grid = GridSpec::centered(focus, {{Vec3::UnitX(), n, 0.5e-3}, {Vec3::UnitY(), n, 0.5e-3}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(field_on_grid(layout, plan, grid, Medium{}, PistonDirectivity{}, {1, path}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * layout.size()));
}
BENCHMARK_CAPTURE(BM_FieldGrid, naive, SummationPath::kNaive)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FieldGrid, optimized, SummationPath::kOptimized)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_SampleTrajectory(benchmark::State& state) {
  EllipseTrajectory t;
  t.r_x = 1e-3;
  t.step_width = 1e-3 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_trajectory(t));
}
BENCHMARK(BM_SampleTrajectory)->Arg(5)->Arg(50)->Arg(500);

void BM_CompileLateral(benchmark::State& state) {
  const auto layout = panels();
  EllipseTrajectory t;
  t.center = Vec3(0.0, 0.0, 0.2);
  const auto seq = sample_trajectory(t);
  CompileOptions options;
  options.quantize_bits = 8;
  for (auto _ : state) benchmark::DoNotOptimize(compile_lm(layout, seq, Medium{}, 1000.0, options));
}
BENCHMARK(BM_CompileLateral)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
