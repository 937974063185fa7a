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

#include "cli/config.hpp"

#include "ultrafocus/io.hpp"

#include <fstream>
#include <sstream>

namespace ultrafocus::cli {

using nlohmann::json;

namespace {

const char* phasing_name(ReflectionPhasing p) { return p == ReflectionPhasing::kViaMirror ? "via_mirror" : "direct"; }

ReflectionPhasing phasing_from(const std::string& s) {
  if (s == "via_mirror") return ReflectionPhasing::kViaMirror;
  if (s == "direct") return ReflectionPhasing::kDirect;
  throw ConfigError("focus.phasing must be 'via_mirror' or 'direct', got '" + s + "'");
}

}  // namespace

void RunConfig::validate() const {
  if (layout.devices.empty()) throw ConfigError("layout needs at least one device");
  for (const auto& d : layout.devices) d.spec().validate();
  if (!(layout.source_pressure > 0.0)) throw ConfigError("layout.source_pressure_pa must be > 0");
  if (layout.mirror) layout.mirror->validate();
  medium.validate();
  ultrafocus::validate(directivity);
  if (!focus.point.allFinite()) throw ConfigError("focus.point_m must be finite");
  grid.validate();
  for (auto a : metrics.fwhm_axes) {
    if (a >= grid.axes.size()) throw ConfigError("metrics.fwhm_axes names a missing grid axis");
  }
  if (!(metrics.reflection_factor >= 0.0)) throw ConfigError("metrics.reflection_factor must be >= 0");
  if (!(metrics.region_width_u > 0.0) || !(metrics.region_width_v > 0.0)) {
    throw ConfigError("metrics.region width must be > 0");
  }
  trajectory.validate();
  if (!(schedule.control_rate > 0.0)) throw ConfigError("schedule.control_rate_hz must be > 0");
  if (schedule.quantize_bits && (*schedule.quantize_bits < 1 || *schedule.quantize_bits > 16)) {
    throw ConfigError("schedule.quantize_bits must lie in [1, 16]");
  }
  schedule.am.validate();
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

SliceRegion RunConfig::region() const {
  return SliceRegion{metrics.region_center.value_or(focus.point), metrics.region_width_u, metrics.region_width_v};
}

json to_json(const RunConfig& c) {
  json metrics{{"quantity", c.metrics.quantity == FieldQuantity::kRadiation ? "radiation" : "pressure"},
               {"fwhm_axes", c.metrics.fwhm_axes},
               {"reflection_factor", c.metrics.reflection_factor},
               {"region_width_m", json::array({c.metrics.region_width_u, c.metrics.region_width_v})}};
  if (c.metrics.region_center) metrics["region_center_m"] = vec_to_json(*c.metrics.region_center);

  json schedule{{"mode", c.schedule.mode == ScheduleMode::kLateral ? "lm" : "am"},
                {"control_rate_hz", c.schedule.control_rate},
                {"quantize_bits", c.schedule.quantize_bits ? json(*c.schedule.quantize_bits) : json(nullptr)},
                {"am", c.schedule.am}};

  return json{{"layout", c.layout},
              {"medium", c.medium},
              {"directivity", c.directivity},
              {"focus", json{{"point_m", vec_to_json(c.focus.point)}, {"phasing", phasing_name(c.focus.phasing)}}},
              {"grid", c.grid},
              {"metrics", metrics},
              {"trajectory", c.trajectory},
              {"schedule", schedule},
              {"verify", json{{"random_points", c.verify.random_points},
                              {"random_layouts", c.verify.random_layouts},
                              {"seed", c.verify.seed}}},
              {"threads", c.threads},
              {"output", json{{"dir", c.output_dir}}}};
}

RunConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  RunConfig c;
  try {
    c.layout = j.at("layout").get<LayoutConfig>();
    if (j.contains("medium")) c.medium = j.at("medium").get<Medium>();
    if (j.contains("directivity")) {
      const json& d = j.at("directivity");
      if (d.contains("table_csv")) {
        std::filesystem::path p = d.at("table_csv").get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        std::ifstream in(p);
        if (!in) throw ConfigError("cannot open directivity table '" + p.string() + "'");
        c.directivity = read_directivity_csv(in);
      } else {
        c.directivity = d.get<Directivity>();
      }
    }
    if (j.contains("focus")) {
      const json& f = j.at("focus");
      if (f.contains("point_m")) c.focus.point = vec_from_json(f.at("point_m"));
      c.focus.phasing = phasing_from(f.value("phasing", std::string("via_mirror")));
    }
    c.grid = j.at("grid").get<GridSpec>();
    if (j.contains("metrics")) {
      const json& m = j.at("metrics");
      const std::string q = m.value("quantity", std::string("radiation"));
      if (q != "radiation" && q != "pressure") throw ConfigError("metrics.quantity must be 'radiation' or 'pressure'");
      c.metrics.quantity = q == "radiation" ? FieldQuantity::kRadiation : FieldQuantity::kPressure;
      if (m.contains("fwhm_axes")) c.metrics.fwhm_axes = m.at("fwhm_axes").get<std::vector<std::size_t>>();
      c.metrics.reflection_factor = m.value("reflection_factor", c.metrics.reflection_factor);
      if (m.contains("region_center_m")) c.metrics.region_center = vec_from_json(m.at("region_center_m"));
      if (m.contains("region_width_m")) {
        const auto w = m.at("region_width_m").get<std::vector<double>>();
        if (w.size() != 2) throw ConfigError("metrics.region_width_m needs two entries");
        c.metrics.region_width_u = w[0];
        c.metrics.region_width_v = w[1];
      }
    }
    if (j.contains("trajectory")) c.trajectory = j.at("trajectory").get<EllipseTrajectory>();
    if (j.contains("schedule")) {
      const json& s = j.at("schedule");
      const std::string mode = s.value("mode", std::string("lm"));
      if (mode != "lm" && mode != "am") throw ConfigError("schedule.mode must be 'lm' or 'am'");
      c.schedule.mode = mode == "lm" ? ScheduleMode::kLateral : ScheduleMode::kAmplitude;
      c.schedule.control_rate = s.value("control_rate_hz", c.schedule.control_rate);
      if (s.contains("quantize_bits")) {
        const json& q = s.at("quantize_bits");
        c.schedule.quantize_bits = q.is_null() ? std::nullopt : std::optional<int>(q.get<int>());
      }
      if (s.contains("am")) c.schedule.am = s.at("am").get<AmEnvelope>();
    }
    if (j.contains("verify")) {
      const json& v = j.at("verify");
      c.verify.random_points = v.value("random_points", c.verify.random_points);
      c.verify.random_layouts = v.value("random_layouts", c.verify.random_layouts);
      c.verify.seed = v.value("seed", c.verify.seed);
    }
    c.threads = j.value("threads", c.threads);
    if (j.contains("output")) c.output_dir = j.at("output").value("dir", c.output_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  return c;
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
  }
  return config_from_json(j, base_dir);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

std::string serialize_config(const RunConfig& c) { return to_json(c).dump(2) + "\n"; }

std::string config_hash(const RunConfig& c) {
  json j = to_json(c);
  j.erase("output");
  j.erase("threads");
  return fnv1a_hex(j.dump());
}

bool operator==(const RunConfig& a, const RunConfig& b) { return to_json(a) == to_json(b); }

}  // namespace ultrafocus::cli
