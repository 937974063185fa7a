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

#include "ultrafocus/json.hpp"

#include <string>

namespace ultrafocus {

using nlohmann::json;

json vec_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected a 3-element array, got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::string axis_label(std::size_t axis) {
  static constexpr const char* kLabels[] = {"x", "y", "z"};
  return axis < 3 ? kLabels[axis] : "axis" + std::to_string(axis);
}

ArrayLayout LayoutConfig::build() const {
  std::vector<DeviceSpec> specs;
  specs.reserve(devices.size());
  for (const auto& d : devices) specs.push_back(d.spec());
  ArrayLayout layout = build_array(specs, source_pressure);
  return mirror ? apply_mirror(layout, *mirror) : layout;
}

bool LayoutConfig::operator==(const LayoutConfig& o) const {
  if (devices != o.devices || source_pressure != o.source_pressure) return false;
  if (mirror.has_value() != o.mirror.has_value()) return false;
  return !mirror || (mirror->point == o.mirror->point && mirror->normal == o.mirror->normal &&
                     mirror->coefficient == o.mirror->coefficient);
}

void to_json(json& j, const DeviceConfig& d) {
  j = json{{"rows", d.rows},
           {"cols", d.cols},
           {"pitch_m", d.pitch},
           {"position_m", vec_to_json(d.position)},
           {"euler_deg", vec_to_json(d.euler_deg)}};
}

void from_json(const json& j, DeviceConfig& d) {
  d = DeviceConfig{};
  d.rows = j.value("rows", d.rows);
  d.cols = j.value("cols", d.cols);
  d.pitch = j.value("pitch_m", d.pitch);
  if (j.contains("position_m")) d.position = vec_from_json(j.at("position_m"));
  if (j.contains("euler_deg")) d.euler_deg = vec_from_json(j.at("euler_deg"));
}

void to_json(json& j, const LayoutConfig& c) {
  j = json{{"devices", c.devices}, {"source_pressure_pa", c.source_pressure}};
  if (c.mirror) {
    j["mirror"] = json{{"point_m", vec_to_json(c.mirror->point)},
                       {"normal", vec_to_json(c.mirror->normal)},
                       {"coefficient", c.mirror->coefficient}};
  }
}

void from_json(const json& j, LayoutConfig& c) {
  c = LayoutConfig{};
  c.devices = j.at("devices").get<std::vector<DeviceConfig>>();
  if (c.devices.empty()) throw ConfigError("layout needs at least one device");
  c.source_pressure = j.value("source_pressure_pa", c.source_pressure);
  if (j.contains("mirror") && !j.at("mirror").is_null()) {
    const json& m = j.at("mirror");
    MirrorPlane plane;
    plane.point = vec_from_json(m.at("point_m"));
    plane.normal = vec_from_json(m.at("normal"));
    plane.coefficient = m.value("coefficient", 1.0);
    c.mirror = plane;
  }
}

void to_json(json& j, const Medium& m) {
  j = json{{"speed_of_sound_m_s", m.speed_of_sound},
           {"density_kg_m3", m.density},
           {"carrier_frequency_hz", m.carrier_frequency}};
}

void from_json(const json& j, Medium& m) {
  m = Medium{};
  m.speed_of_sound = j.value("speed_of_sound_m_s", m.speed_of_sound);
  m.density = j.value("density_kg_m3", m.density);
  m.carrier_frequency = j.value("carrier_frequency_hz", m.carrier_frequency);
}

void to_json(json& j, const Directivity& d) {
  if (std::holds_alternative<OmniDirectivity>(d)) {
    j = json{{"kind", "omni"}};
  } else if (const auto* p = std::get_if<PistonDirectivity>(&d)) {
    j = json{{"kind", "piston"}, {"aperture_radius_m", p->aperture_radius}};
  } else {
    const auto& t = std::get<TableDirectivity>(d);
    j = json{{"kind", "table"}, {"angles_deg", t.angles_deg}, {"gains", t.gains}};
  }
}

void from_json(const json& j, Directivity& d) {
  const std::string kind = j.value("kind", std::string("piston"));
  if (kind == "omni") {
    d = OmniDirectivity{};
  } else if (kind == "piston") {
    d = PistonDirectivity{j.value("aperture_radius_m", PistonDirectivity{}.aperture_radius)};
  } else if (kind == "table") {
    d = TableDirectivity{j.at("angles_deg").get<std::vector<double>>(), j.at("gains").get<std::vector<double>>()};
  } else {
    throw ConfigError("unknown directivity kind '" + kind + "'");
  }
}

void to_json(json& j, const GridSpec& g) {
  json axes = json::array();
  for (const auto& a : g.axes) {
    axes.push_back(json{{"direction", vec_to_json(a.direction)}, {"count", a.count}, {"spacing_m", a.spacing}});
  }
  j = json{{"origin_m", vec_to_json(g.origin)}, {"axes", axes}};
}

void from_json(const json& j, GridSpec& g) {
  std::vector<GridAxis> axes;
  for (const auto& a : j.at("axes")) {
    const auto count = a.at("count").get<long long>();
    if (count < 1) throw ConfigError("grid axes need at least one sample");
    axes.push_back({vec_from_json(a.at("direction")), static_cast<std::size_t>(count), a.at("spacing_m").get<double>()});
  }
  if (j.contains("center_m")) {
    g = GridSpec::centered(vec_from_json(j.at("center_m")), std::move(axes));
  } else {
    g = GridSpec{vec_from_json(j.at("origin_m")), std::move(axes)};
  }
}

void to_json(json& j, const EllipseTrajectory& t) {
  j = json{{"center_m", vec_to_json(t.center)}, {"u_axis", vec_to_json(t.u_axis)},
           {"v_axis", vec_to_json(t.v_axis)},   {"r_x_m", t.r_x},
           {"r_y_m", t.r_y},                    {"lm_frequency_hz", t.lm_frequency},
           {"step_width_m", t.step_width}};
}

void from_json(const json& j, EllipseTrajectory& t) {
  t = EllipseTrajectory{};
  if (j.contains("center_m")) t.center = vec_from_json(j.at("center_m"));
  if (j.contains("u_axis")) t.u_axis = vec_from_json(j.at("u_axis"));
  if (j.contains("v_axis")) t.v_axis = vec_from_json(j.at("v_axis"));
  t.r_x = j.value("r_x_m", t.r_x);
  t.r_y = j.value("r_y_m", t.r_y);
  t.lm_frequency = j.value("lm_frequency_hz", t.lm_frequency);
  t.step_width = j.value("step_width_m", t.step_width);
}

void to_json(json& j, const AmEnvelope& e) {
  j = json{{"am_frequency_hz", e.am_frequency},
           {"waveform", e.waveform == AmWaveform::kSine ? "sine" : "square"},
           {"depth", e.depth}};
}

void from_json(const json& j, AmEnvelope& e) {
  e = AmEnvelope{};
  e.am_frequency = j.value("am_frequency_hz", e.am_frequency);
  e.depth = j.value("depth", e.depth);
  const std::string w = j.value("waveform", std::string("sine"));
  if (w == "sine") {
    e.waveform = AmWaveform::kSine;
  } else if (w == "square") {
    e.waveform = AmWaveform::kSquare;
  } else {
    throw ConfigError("unknown AM waveform '" + w + "'");
  }
}

json metrics_to_json(const FocusMetrics& m) {
  json fwhm = json::object();
  for (const auto& [axis, width] : m.fwhm) fwhm[axis] = width;
  return json{{"peak_position_m", vec_to_json(m.peak_position)},
              {"peak_pressure_pa", m.peak_pressure},
              {"fwhm_m", fwhm},
              {"force_n", m.integrated_force},
              {"region", json{{"center_m", vec_to_json(m.region.center)},
                              {"width_m", json::array({m.region.width_u, m.region.width_v})}}}};
}

json field_sidecar(const GridSpec& grid, double normalization, std::string_view config_hash) {
  return json{{"grid", grid},
              {"pgm_normalization_pa", normalization},
              {"pgm_axes", json::array({0, 1})},
              {"config_hash", std::string(config_hash)}};
}

}  // namespace ultrafocus
