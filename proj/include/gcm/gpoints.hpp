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

#include <functional>
#include <optional>
#include <string>

#include "gcm/gmap.hpp"

namespace gcm {

/// Compactly supported generalized point: a net eps -> p_eps.
struct GenPoint {
  AtlasPtr atlas;
  std::function<Point(double)> at;
  CompactRegion support;
  double eps0 = 1.0;
  std::string tag;

  /// Support built from the padded boxes of the sampled grid values.
  static GenPoint from_net(AtlasPtr atlas, std::function<Point(double)> at, const Config& cfg, std::string tag);
  static GenPoint constant(AtlasPtr atlas, const Point& p, const Config& cfg, std::string tag);
  /// Throws SupportEscape if a sampled value with eps < eps0 leaves the support.
  void validate(const Config& cfg) const;
};

/// Generalized number: a net of scalars, moderateness recorded on demand.
class GenNumber {
 public:
  using Fn = std::function<double(double)>;

  GenNumber() : fn_([](double) { return 0.0; }) {}
  GenNumber(Fn fn, std::string tag = {}) : fn_(std::move(fn)), tag_(std::move(tag)) {}
  static GenNumber constant(double c) { return GenNumber([c](double) { return c; }, std::to_string(c)); }

  double at(double eps) const { return fn_(eps); }
  const std::string& tag() const { return tag_; }
  /// |r_eps| on the grid.
  SupSeries series(const Config& cfg) const;
  /// judge_moderate of |r_eps|; the estimate is kept as moderate_bound.
  Verdict check_moderate(const Config& cfg);

  std::optional<OrderEstimate> moderate_bound;

  friend GenNumber operator+(const GenNumber& a, const GenNumber& b);
  friend GenNumber operator-(const GenNumber& a, const GenNumber& b);
  friend GenNumber operator*(const GenNumber& a, const GenNumber& b);

 private:
  Fn fn_;
  std::string tag_;
};

/// judge_negligible of |a_eps - b_eps|.
Verdict numbers_equal(const GenNumber& a, const GenNumber& b, const Config& cfg);

/// parts[0]: metric route (negligible d_g), parts[1]: chart-coordinate route
/// sampled when both points lie in a shared chart. Status is the metric one.
Verdict points_equal(const GenPoint& p, const GenPoint& q, const RiemannianMetric& g, const Config& cfg);

/// The point net eps -> u_eps(p_eps). Throws SupportEscape when a sampled
/// image lies outside every destination chart.
GenPoint eval_at(const MapNet& u, const GenPoint& p, const Config& cfg);

struct Separation {
  GenPoint witness;
  Verdict evaluation;  // points_equal(u(p), v(p))
  Verdict equiv0;
};

/// Per-eps lattice argmax of d(u_eps, v_eps) over K (ties go to the lowest
/// lattice index), held piecewise constant between grid values. Absent when
/// the nets are order-0 equivalent.
std::optional<Separation> separate_by_points(const MapNet& u, const MapNet& v, const CompactRegion& K,
                                             const RiemannianMetric& h, const Config& cfg, int trials = 0);

/// Index of the grid value eps_k with eps_{k+1} < eps <= eps_k, clamped.
std::size_t grid_slot(const std::vector<double>& grid, double eps);

}  // namespace gcm
