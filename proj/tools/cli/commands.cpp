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

#include "cli/commands.hpp"

#include "ultrafocus/io.hpp"
#include "ultrafocus/metrics.hpp"
#include "ultrafocus/trajectory.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace ultrafocus::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

fs::path prepare_dir(const CommandOptions& options) {
  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + options.out_dir.string() + "': " + ec.message());
  return options.out_dir;
}

FieldOptions field_options(const RunConfig& config, SummationPath path = SummationPath::kOptimized) {
  return FieldOptions{config.threads, path};
}

std::vector<Vec3> random_points_in_grid(const RunConfig& config, const ArrayLayout& layout, std::size_t n,
                                        std::mt19937_64& rng) {
  const GridSpec& g = config.grid;
  std::vector<Vec3> points;
  points.reserve(n);
  std::uniform_real_distribution<double> unit(-0.5, 1.5);
  while (points.size() < n) {
    Vec3 p = g.origin;
    for (const auto& a : g.axes) {
      p += unit(rng) * std::max(1.0, static_cast<double>(a.count - 1)) * a.spacing * a.direction;
    }
    const bool clear = std::all_of(layout.transducers().begin(), layout.transducers().end(),
                                   [&](const Transducer& t) { return (t.pose.position - p).norm() > 2e-3; });
    if (clear) points.push_back(p);
  }
  return points;
}

ArrayLayout explicit_reflection(const ArrayLayout& layout) {
  std::vector<Transducer> copies;
  for (std::size_t i = layout.real_count(); i < layout.size(); ++i) {
    Transducer t = layout[i];
    t.is_image = false;
    copies.push_back(t);
  }
  return ArrayLayout(std::move(copies));
}

PhasePlan tail_plan(const PhasePlan& plan, std::size_t from) {
  PhasePlan out;
  out.phases.assign(plan.phases.begin() + static_cast<std::ptrdiff_t>(from), plan.phases.end());
  out.amplitudes.assign(plan.amplitudes.begin() + static_cast<std::ptrdiff_t>(from), plan.amplitudes.end());
  return out;
}

PhasePlan head_plan(const PhasePlan& plan, std::size_t count) {
  PhasePlan out;
  out.phases.assign(plan.phases.begin(), plan.phases.begin() + static_cast<std::ptrdiff_t>(count));
  out.amplitudes.assign(plan.amplitudes.begin(), plan.amplitudes.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

ArrayLayout real_part(const ArrayLayout& layout) {
  std::vector<Transducer> real(layout.transducers().begin(),
                               layout.transducers().begin() + static_cast<std::ptrdiff_t>(layout.real_count()));
  return ArrayLayout(std::move(real));
}

std::string format_value(double v) {
  std::ostringstream ss;
  ss << std::setprecision(6) << v;
  return ss.str();
}

CheckResult at_most(std::string name, double limit, double observed, std::string tolerance = {}) {
  if (tolerance.empty()) tolerance = "<= " + format_value(limit);
  return {std::move(name), std::move(tolerance), observed, observed <= limit};
}

CheckResult at_least(std::string name, double limit, double observed) {
  return {std::move(name), ">= " + format_value(limit), observed, observed >= limit};
}

}  // namespace

double max_relative_error(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const double denom = std::abs(b[i]);
    const double diff = std::abs(a[i] - b[i]);
    worst = std::max(worst, denom > 0.0 ? diff / denom : diff);
  }
  return worst;
}

RandomScene random_scene(std::mt19937_64& rng, std::size_t point_count) {
  std::uniform_int_distribution<int> lattice(1, 6), device_count(1, 3);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };

  std::vector<DeviceSpec> devices(static_cast<std::size_t>(device_count(rng)));
  for (auto& d : devices) {
    d.rows = lattice(rng);
    d.cols = lattice(rng);
    d.pitch = uniform(5e-3, 15e-3);
    d.pose = Pose::from_euler_deg(Vec3(uniform(-0.1, 0.1), uniform(-0.1, 0.1), uniform(-0.05, 0.0)),
                                  Vec3(uniform(-30, 30), uniform(-30, 30), uniform(-30, 30)));
  }
  RandomScene scene;
  scene.layout = build_array(devices, uniform(1.0, 10.0));
  if (u01(rng) < 0.5) {
    MirrorPlane plane;
    plane.point = Vec3(0.0, 0.0, -0.1);
    plane.normal = Vec3(uniform(-0.2, 0.2), uniform(-0.2, 0.2), 1.0).normalized();
    plane.coefficient = u01(rng);
    scene.layout = apply_mirror(scene.layout, plane);
  }
  scene.plan = PhasePlan::uniform(scene.layout.size());
  for (std::size_t i = 0; i < scene.layout.real_count(); ++i) {
    const double phase = uniform(0.0, 2.0 * std::numbers::pi);
    const double amplitude = u01(rng);
    for (std::size_t k : {i, i + scene.layout.real_count()}) {
      if (k >= scene.layout.size()) continue;
      scene.plan.phases[k] = wrap_phase(phase);
      scene.plan.amplitudes[k] = amplitude;
    }
  }
  while (scene.points.size() < point_count) {
    const Vec3 p(uniform(-0.15, 0.15), uniform(-0.15, 0.15), uniform(0.02, 0.3));
    const auto& ts = scene.layout.transducers();
    if (std::all_of(ts.begin(), ts.end(), [&](const Transducer& t) { return (t.pose.position - p).norm() > 2e-3; })) {
      scene.points.push_back(p);
    }
  }
  return scene;
}

Simulation simulate(const RunConfig& config) {
  config.validate();
  Simulation sim;
  sim.layout = config.layout.build();
  sim.plan = solve_focus(sim.layout, config.focus.point, config.medium, config.focus.phasing);
  sim.field = radiation_pressure(
      field_on_grid(sim.layout, sim.plan, config.grid, config.medium, config.directivity, field_options(config)),
      config.medium, config.metrics.reflection_factor);
  return sim;
}

std::optional<FocusMetrics> compute_metrics(const RunConfig& config, const FieldGrid& field, std::ostream& err) {
  FocusMetrics m;
  try {
    const Peak peak = find_peak(field);
    m.peak_position = peak.position;
    m.peak_pressure = peak.value;
  } catch (const MetricError& e) {
    err << "warning: metrics omitted: " << e.what() << '\n';
    return std::nullopt;
  }
  for (auto axis : config.metrics.fwhm_axes) {
    try {
      m.fwhm[axis_label(axis)] = fwhm_along(field, axis, config.focus.point, config.metrics.quantity);
    } catch (const MetricError& e) {
      err << "warning: fwhm along " << axis_label(axis) << " omitted: " << e.what() << '\n';
    }
  }
  m.region = config.region();
  try {
    m.integrated_force = integrate_force(field, m.region);
  } catch (const MetricError& e) {
    err << "warning: force omitted: " << e.what() << '\n';
  }
  return m;
}

int cmd_field(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  const Simulation sim = simulate(config);
  const fs::path dir = prepare_dir(options);
  const std::string hash = config_hash(config);

  {
    auto csv = open_out(dir / "field.csv");
    write_field_csv(csv, sim.field, hash);
  }
  double normalization = 0.0;
  {
    auto pgm = open_out(dir / "field.pgm", true);
    normalization = write_field_pgm(pgm, sim.field, hash);
  }
  write_json(dir / "field.json", field_sidecar(sim.field.spec, normalization, hash));
  {
    auto phases = open_out(dir / "phases.csv");
    write_phase_plan_csv(phases, sim.layout, sim.plan);
  }

  out << "transducers: " << sim.layout.size() << '\n';
  out << "samples: " << sim.field.pressure.size() << '\n';
  if (const auto metrics = compute_metrics(config, sim.field, err)) {
    json report = metrics_to_json(*metrics);
    report["config_hash"] = hash;
    write_json(dir / "metrics.json", report);
    out << "peak_pressure_pa: " << format_value(metrics->peak_pressure) << '\n';
    for (const auto& [axis, width] : metrics->fwhm) out << "fwhm_" << axis << "_mm: " << format_value(width * 1e3) << '\n';
    out << "force_n: " << format_value(metrics->integrated_force) << '\n';
  }
  out << "wrote " << (dir / "field.csv").string() << '\n';
  return kExitOk;
}

int cmd_metrics(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  const Simulation sim = simulate(config);
  const auto metrics = compute_metrics(config, sim.field, err);
  if (!metrics) {
    err << "error: grid cannot resolve focal metrics\n";
    return kExitRuntime;
  }
  json report = metrics_to_json(*metrics);
  report["config_hash"] = config_hash(config);
  write_json(prepare_dir(options) / "metrics.json", report);
  out << report.dump(2) << '\n';
  return kExitOk;
}

int cmd_schedule(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream&) {
  config.validate();
  const ArrayLayout layout = config.layout.build();
  const FocusSequence seq = sample_trajectory(config.trajectory);
  const CompileOptions compile{config.schedule.quantize_bits, config.focus.phasing};
  const bool lateral = config.schedule.mode == ScheduleMode::kLateral;
  const FrameSchedule schedule =
      lateral ? compile_lm(layout, seq, config.medium, config.schedule.control_rate, compile)
              : compile_am(layout, config.focus.point, config.schedule.am, config.medium,
                           config.schedule.control_rate, compile);

  const fs::path dir = prepare_dir(options);
  const std::string hash = config_hash(config);
  {
    auto bin = open_out(dir / "schedule.fsch", true);
    write_schedule_binary(bin, schedule);
  }
  {
    auto csv = open_out(dir / "schedule.csv");
    write_schedule_csv(csv, schedule, hash);
  }
  write_json(dir / "schedule.json", json{{"config_hash", hash},
                                         {"mode", lateral ? "lm" : "am"},
                                         {"point_count", seq.size()},
                                         {"dwell_s", seq.dwell},
                                         {"period_s", seq.period},
                                         {"path_length_m", seq.path_length},
                                         {"control_rate_hz", schedule.control_rate},
                                         {"transducer_count", schedule.transducer_count},
                                         {"frame_count", schedule.frames.size()}});

  out << "points: " << seq.size() << '\n';
  out << "dwell_s: " << format_value(seq.dwell) << '\n';
  out << "period_s: " << format_value(seq.period) << '\n';
  out << "perimeter_m: " << format_value(seq.path_length) << '\n';
  out << "frames: " << schedule.frames.size() << '\n';
  out << "wrote " << (dir / "schedule.fsch").string() << '\n';
  return kExitOk;
}

std::vector<CheckResult> run_checks(const RunConfig& config, const CommandOptions& options) {
  config.validate();
  std::vector<CheckResult> checks;
  std::mt19937_64 rng(config.verify.seed);
  const ArrayLayout layout = config.layout.build();
  const PhasePlan plan = solve_focus(layout, config.focus.point, config.medium, config.focus.phasing);
  const FieldOptions naive{1, SummationPath::kNaive};
  const FieldOptions fast = field_options(config);

  const auto points = random_points_in_grid(config, layout, config.verify.random_points, rng);
  const auto reference = evaluate_points(layout, plan, points, config.medium, config.directivity, naive);
  const auto optimized = evaluate_points(layout, plan, points, config.medium, config.directivity, fast);
  checks.push_back(at_most("oracle_vs_optimized_config", 1e-9, max_relative_error(optimized, reference)));

  double worst = 0.0;
  const std::size_t per_layout =
      std::max<std::size_t>(1, config.verify.random_points / std::max<std::size_t>(1, config.verify.random_layouts));
  for (std::size_t i = 0; i < config.verify.random_layouts; ++i) {
    const RandomScene scene = random_scene(rng, per_layout);
    const auto a = evaluate_points(scene.layout, scene.plan, scene.points, config.medium, config.directivity, naive);
    const auto b = evaluate_points(scene.layout, scene.plan, scene.points, config.medium, config.directivity, fast);
    worst = std::max(worst, max_relative_error(b, a));
  }
  checks.push_back(at_most("oracle_vs_optimized_random_layouts", 1e-9, worst));

  const FieldGrid single = field_on_grid(layout, plan, config.grid, config.medium, config.directivity, {1});
  const FieldGrid multi = field_on_grid(layout, plan, config.grid, config.medium, config.directivity, {4});
  checks.push_back(at_most("thread_count_invariance", 1e-12, max_relative_error(multi.pressure, single.pressure)));

  PhasePlan shifted = plan;
  for (auto& p : shifted.phases) p = wrap_phase(p + 1.2345);
  const auto rotated = evaluate_points(layout, shifted, points, config.medium, config.directivity, fast);
  double phase_err = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    phase_err = std::max(phase_err, std::abs(std::abs(rotated[i]) - std::abs(optimized[i])) / std::abs(optimized[i]));
  }
  checks.push_back(at_most("global_phase_invariance", 1e-12, phase_err));

  const FieldGrid field = radiation_pressure(single, config.medium, config.metrics.reflection_factor);
  try {
    const Peak peak = find_peak(field);
    checks.push_back(at_most("focus_peak_offset_mm", 0.5, (peak.position - config.focus.point).norm() * 1e3));
  } catch (const MetricError&) {
    // grid too small to locate a peak; nothing to check
  }

  const Complex focal = pressure_at(layout, plan, config.focus.point, config.medium, config.directivity);
  const Complex quantized =
      pressure_at(layout, quantize_phases(plan, 8), config.focus.point, config.medium, config.directivity);
  checks.push_back(at_least("quantization_8bit_retention", 0.999, std::abs(quantized) / std::abs(focal)));

  if (layout.has_images()) {
    const ArrayLayout direct = real_part(layout);
    const ArrayLayout copy = explicit_reflection(layout);
    std::vector<Vec3> above;
    for (const auto& p : points) {
      if (layout.mirror()->signed_distance(p) > 0.0) above.push_back(p);
    }
    const auto whole = evaluate_points(layout, plan, above, config.medium, config.directivity, naive);
    const auto a = evaluate_points(direct, head_plan(plan, layout.real_count()), above, config.medium,
                                   config.directivity, naive);
    const auto b = evaluate_points(copy, tail_plan(plan, layout.real_count()), above, config.medium,
                                   config.directivity, naive);
    std::vector<Complex> sum(above.size());
    for (std::size_t i = 0; i < above.size(); ++i) sum[i] = a[i] + b[i];
    checks.push_back(at_most("mirror_superposition", 1e-12, max_relative_error(sum, whole)));
  }

  const FocusSequence seq = sample_trajectory(config.trajectory);
  double spacing = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    spacing = std::max(spacing, (seq.points[(i + 1) % seq.size()] - seq.points[i]).norm());
  }
  checks.push_back(
      at_most("trajectory_spacing_over_step", 1.0 + 1e-9, spacing / config.trajectory.step_width, "<= 1 + 1e-9"));
  checks.push_back(at_most("trajectory_period_error_s", 1e-9,
                           std::abs(seq.dwell * static_cast<double>(seq.size()) - seq.period)));

  if (options.field_file) {
    std::ifstream in(*options.field_file);
    if (!in) throw IoError("cannot open field file '" + options.field_file->string() + "'");
    const auto rows = read_field_csv(in);
    double mismatch = std::numeric_limits<double>::infinity();
    if (rows.size() == single.pressure.size()) {
      mismatch = 0.0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const double denom = std::max(std::abs(single.pressure[i]), 1e-300);
        mismatch = std::max(mismatch, std::abs(rows[i].pressure - single.pressure[i]) / denom);
        mismatch = std::max(mismatch, (rows[i].position - single.spec.point(i)).norm() / 1e-3);
      }
    }
    checks.push_back(at_most("field_file_matches_recompute", 1e-9, mismatch));
  }

  return checks;
}

int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream&) {
  const auto checks = run_checks(config, options);
  bool ok = true;
  out << std::left << std::setw(38) << "check" << std::setw(14) << "tolerance" << std::setw(16) << "observed"
      << "result\n";
  for (const auto& c : checks) {
    out << std::left << std::setw(38) << c.name << std::setw(14) << c.tolerance << std::setw(16)
        << format_value(c.observed) << (c.pass ? "PASS" : "FAIL") << '\n';
    ok = ok && c.pass;
  }
  out << (ok ? "all checks passed\n" : "some checks FAILED\n");
  return ok ? kExitOk : kExitCheckFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ultrafocus: phased-array focus simulation and modulation schedules"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  unsigned threads = 0;
  int quantize_bits = 0;
  std::uint64_t seed = 0;
  std::string field_file;
  app.add_option("--config", config_path, "run configuration (JSON)")->required();
  auto* out_opt = app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  auto* threads_opt = app.add_option("--threads", threads, "worker threads for field evaluation")
                          ->check(CLI::Range(1u, 1024u));
  auto* bits_opt = app.add_option("--quantize-bits", quantize_bits, "phase quantization for schedules")
                       ->check(CLI::Range(1, 16));
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized checks");

  auto* field_cmd = app.add_subcommand("field", "simulate the focal field and export CSV, PGM and metrics");
  auto* schedule_cmd = app.add_subcommand("schedule", "compile the modulation pattern into a frame schedule");
  auto* metrics_cmd = app.add_subcommand("metrics", "print the focal metrics report");
  auto* verify_cmd = app.add_subcommand("verify", "run oracle-equivalence and invariant checks");
  verify_cmd->add_option("--field", field_file, "previously exported field.csv to compare against a recompute");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig config = load_config(config_path);
    if (*out_opt) config.output_dir = out_dir;
    if (*threads_opt) config.threads = threads;
    if (*bits_opt) config.schedule.quantize_bits = quantize_bits;
    if (*seed_opt) config.verify.seed = seed;

    CommandOptions options;
    options.out_dir = config.output_dir;
    if (!field_file.empty()) options.field_file = field_file;

    if (field_cmd->parsed()) return cmd_field(config, options, out, err);
    if (schedule_cmd->parsed()) return cmd_schedule(config, options, out, err);
    if (metrics_cmd->parsed()) return cmd_metrics(config, options, out, err);
    return cmd_verify(config, options, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SingularityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace ultrafocus::cli
