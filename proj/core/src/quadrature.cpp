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

#include "ultrafocus/quadrature.hpp"

#include <array>
#include <cmath>

namespace ultrafocus {
namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the center.
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double gauss;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double k = kKronrod[7] * fc;
  double g = kGauss[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    k += kKronrod[i] * pair;
    if (i % 2 == 1) g += kGauss[i / 2] * pair;
  }
  return {k * half, g * half};
}

void recurse(const std::function<double(double)>& f, double a, double b, double tol, int depth,
             QuadratureResult& acc) {
  const Panel p = gk15(f, a, b);
  acc.evaluations += 15;
  const double err = std::abs(p.kronrod - p.gauss);
  if (err <= tol || depth <= 0) {
    acc.value += p.kronrod;
    acc.error_estimate += err;
    return;
  }
  const double mid = 0.5 * (a + b);
  recurse(f, a, mid, 0.5 * tol, depth - 1, acc);
  recurse(f, mid, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tolerance, int max_depth) {
  QuadratureResult acc;
  if (a == b) return acc;
  recurse(f, a, b, abs_tolerance, max_depth, acc);
  return acc;
}

}  // namespace ultrafocus
