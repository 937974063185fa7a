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

#include "cli/config.hpp"

#include "ultrafocus/field.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ultrafocus::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfig = 2,
  kExitRuntime = 3,
};

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct CommandOptions {
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> field_file;  // verify: compare against this export
};

int cmd_field(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_metrics(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_schedule(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);

struct Simulation {
  ArrayLayout layout;
  PhasePlan plan;
  FieldGrid field;  // pressure and radiation populated
};

/// Layout, focus solution and radiation field for `config`.
Simulation simulate(const RunConfig& config);

/// Peak, per-axis FWHM and force; nullopt with a warning on `err` when the grid cannot resolve a peak.
std::optional<FocusMetrics> compute_metrics(const RunConfig& config, const FieldGrid& field, std::ostream& err);

struct CheckResult {
  std::string name;
  std::string tolerance;
  double observed = 0.0;
  bool pass = false;
};

std::vector<CheckResult> run_checks(const RunConfig& config, const CommandOptions& options);

/// A small random layout (optionally mirrored), phase plan and evaluation points kept
/// at least 2 mm from every source.
struct RandomScene {
  ArrayLayout layout;
  PhasePlan plan;
  std::vector<Vec3> points;
};
RandomScene random_scene(std::mt19937_64& rng, std::size_t point_count);

/// Largest |a_i - b_i| / |b_i|.
double max_relative_error(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace ultrafocus::cli
