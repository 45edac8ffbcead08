/*
 * Copyright 2026 The gcolombeau Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>

namespace gcm {

/// Net parameter grid eps_k = base^k, k = k_min..k_max.
struct EpsGridSpec {
  double base = 0.5;
  int k_min = 2;
  int k_max = 16;
};

/// Numerical knobs shared by every check. Defaults resolve the gallery at
/// desk scale.
struct Config {
  EpsGridSpec eps_grid;
  int lattice_density = 33;   // samples per axis of a compact region
  int k_max = 3;              // highest derivative order probed
  int n_cap = 10;             // largest growth exponent accepted as moderate
  int m_probe = 5;            // decay exponent accepted as "every m"
  double r2_min = 0.9;        // minimum fit quality for a decided verdict
  double vanish_tol = 1e-3;   // tail level accepted as "-> 0"
  double margin_min = 0.01;   // boundary-escape threshold (fraction of chart extent)
  double m_fail = 0.5;        // decay slopes at or below this always fail negligibility
  double slope_tol = 0.05;    // slack when reading integer exponents off a slope
  double residual_tol = 0.1;  // max log-residual for which a fit counts as clean regardless of r2
  double noise_floor = 1e-12; // differences below noise_floor * (1 + magnitude) count as zero
  double pad_fraction = 0.1;  // padding of image boxes (L')
  int random_extra = 0;       // extra seeded random points per compact region
  std::uint64_t seed = 1;
};

}  // namespace gcm
