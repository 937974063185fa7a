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

#include "ultrafocus/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace ultrafocus {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_stream(const std::ostream& out) {
  if (!out) throw IoError("write failed");
}

template <typename T>
void put_le(std::ostream& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  const U bits = std::bit_cast<U>(value);
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  std::array<unsigned char, sizeof(U)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw IoError("truncated frame schedule");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

bool skip_line(const std::string& line) {
  return line.empty() || line[0] == '#' || line == "\r";
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    return v;
  } catch (const std::exception&) {
    throw IoError("not a number: '" + s + "'");
  }
}

}  // namespace

void write_field_csv(std::ostream& out, const FieldGrid& field, std::string_view config_hash) {
  const bool has_radiation = field.radiation.size() == field.pressure.size();
  out << "# config_hash=" << config_hash << '\n';
  out << "x_m,y_m,z_m,re_pa,im_pa,abs_pa,radiation_pa\n";
  for (std::size_t i = 0; i < field.pressure.size(); ++i) {
    const Vec3 p = field.spec.point(i);
    const Complex v = field.pressure[i];
    out << exact(p.x()) << ',' << exact(p.y()) << ',' << exact(p.z()) << ',' << exact(v.real()) << ','
        << exact(v.imag()) << ',' << exact(std::abs(v)) << ',' << exact(has_radiation ? field.radiation[i] : 0.0)
        << '\n';
  }
  check_stream(out);
}

std::vector<FieldCsvRow> read_field_csv(std::istream& in) {
  std::vector<FieldCsvRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (skip_line(line)) continue;
    if (header) {
      header = false;
      if (line.rfind("x_m,", 0) == 0) continue;
    }
    const auto cells = split_csv(line);
    if (cells.size() != 7) throw IoError("field CSV row needs 7 columns: " + line);
    FieldCsvRow row;
    row.position = {parse_double(cells[0]), parse_double(cells[1]), parse_double(cells[2])};
    row.pressure = {parse_double(cells[3]), parse_double(cells[4])};
    row.radiation = parse_double(cells[6]);
    rows.push_back(row);
  }
  return rows;
}

double write_field_pgm(std::ostream& out, const FieldGrid& field, std::string_view config_hash) {
  const GridSpec& g = field.spec;
  const std::size_t w = g.count(0), h = g.count(1);
  double peak = 0.0;
  for (std::size_t j = 0; j < h; ++j) {
    for (std::size_t i = 0; i < w; ++i) peak = std::max(peak, std::abs(field.pressure[g.linear_index(i, j, 0)]));
  }
  out << "P5\n# config_hash=" << config_hash << '\n' << w << ' ' << h << "\n255\n";
  std::vector<char> row(w);
  for (std::size_t jj = 0; jj < h; ++jj) {
    const std::size_t j = h - 1 - jj;
    for (std::size_t i = 0; i < w; ++i) {
      const double v = peak > 0.0 ? std::abs(field.pressure[g.linear_index(i, j, 0)]) / peak : 0.0;
      row[i] = static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)));
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  check_stream(out);
  return peak;
}

void write_phase_plan_csv(std::ostream& out, const ArrayLayout& layout, const PhasePlan& plan) {
  plan.validate(layout.size());
  out << "index,device,phase_rad,amplitude\n";
  for (std::size_t i = 0; i < layout.size(); ++i) {
    out << i << ',' << layout[i].device << ',' << exact(plan.phases[i]) << ',' << exact(plan.amplitudes[i]) << '\n';
  }
  check_stream(out);
}

void write_schedule_binary(std::ostream& out, const FrameSchedule& schedule) {
  out.write("FSCH", 4);
  put_le<std::uint32_t>(out, kScheduleVersion);
  put_le<double>(out, schedule.control_rate);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(schedule.transducer_count));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(schedule.frames.size()));
  for (const auto& f : schedule.frames) {
    if (f.phases.size() != schedule.transducer_count || f.amplitudes.size() != schedule.transducer_count) {
      throw IoError("frame size does not match the schedule's transducer count");
    }
    put_le<double>(out, f.timestamp);
    for (double p : f.phases) put_le<float>(out, static_cast<float>(p));
    for (double a : f.amplitudes) put_le<float>(out, static_cast<float>(a));
  }
  check_stream(out);
}

FrameSchedule read_schedule_binary(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), 4);
  if (!in || std::string_view(magic.data(), 4) != "FSCH") throw IoError("not a frame schedule (bad magic)");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kScheduleVersion) throw IoError("unsupported frame schedule version " + std::to_string(version));
  FrameSchedule s;
  s.control_rate = get_le<double>(in);
  s.transducer_count = get_le<std::uint32_t>(in);
  const auto frames = get_le<std::uint32_t>(in);
  s.frames.resize(frames);
  for (auto& f : s.frames) {
    f.timestamp = get_le<double>(in);
    f.phases.resize(s.transducer_count);
    f.amplitudes.resize(s.transducer_count);
    for (auto& p : f.phases) p = get_le<float>(in);
    for (auto& a : f.amplitudes) a = get_le<float>(in);
  }
  return s;
}

void write_schedule_csv(std::ostream& out, const FrameSchedule& schedule, std::string_view config_hash) {
  out << "# config_hash=" << config_hash << '\n';
  out << "# control_rate_hz=" << exact(schedule.control_rate) << '\n';
  out << "frame,timestamp_s,index,phase_rad,amplitude\n";
  for (std::size_t j = 0; j < schedule.frames.size(); ++j) {
    const auto& f = schedule.frames[j];
    const std::string ts = exact(f.timestamp);
    for (std::size_t i = 0; i < f.phases.size(); ++i) {
      out << j << ',' << ts << ',' << i << ',' << exact(f.phases[i]) << ',' << exact(f.amplitudes[i]) << '\n';
    }
  }
  check_stream(out);
}

TableDirectivity read_directivity_csv(std::istream& in) {
  TableDirectivity t;
  std::string line;
  while (std::getline(in, line)) {
    if (skip_line(line)) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 2) throw IoError("directivity CSV rows need 2 columns: " + line);
    if (t.angles_deg.empty() && cells[0].find_first_of("0123456789") != 0 && cells[0].find('.') != 0) {
      continue;  // header
    }
    t.angles_deg.push_back(parse_double(cells[0]));
    t.gains.push_back(parse_double(cells[1]));
  }
  validate(Directivity{t});
  return t;
}

}  // namespace ultrafocus
