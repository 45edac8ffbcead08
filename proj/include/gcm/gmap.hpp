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
#include <vector>

#include "gcm/asymptotics.hpp"
#include "gcm/config.hpp"
#include "gcm/manifold.hpp"

namespace gcm {

/// Smooth map X -> Y. For a point given in source chart a the map returns its
/// image in a destination chart of its own choosing (the "home" chart); every
/// other local representative is obtained through the target transitions.
struct SmoothMap {
  using HomeFn = std::function<std::optional<ChartJets>(int src_chart, std::span<const Jet> x)>;

  AtlasPtr src, dst;
  HomeFn home;

  std::optional<ChartJets> eval(int src_chart, std::span<const Jet> x) const;
  std::optional<Point> value(const Point& p) const;
  /// Local representative psi_b o u o phi_a^{-1}; nullopt off chart b.
  std::optional<JetVec> local(int a, int b, std::span<const Jet> x) const;
};

/// Net (u_eps) of smooth maps. Evaluation is re-entrant.
class MapNet {
 public:
  using NetFn = std::function<std::optional<ChartJets>(double eps, int src_chart, std::span<const Jet> x)>;

  MapNet() = default;
  MapNet(AtlasPtr src, AtlasPtr dst, NetFn fn, std::string tag);
  /// The eps-independent net sigma(f).
  static MapNet constant(const SmoothMap& f, std::string tag);

  const AtlasPtr& src() const { return src_; }
  const AtlasPtr& dst() const { return dst_; }
  const std::string& tag() const { return tag_; }
  SmoothMap at(double eps) const;

  /// Image in a chart that actually contains it. Throws ChartEscape when the
  /// image lies in no destination chart, nullopt when x is outside the map.
  std::optional<ChartJets> eval(double eps, int src_chart, std::span<const Jet> x) const;
  std::optional<Point> value(double eps, const Point& p) const;

  /// Condition reports attached by compose.
  std::vector<std::string> provenance;

 private:
  AtlasPtr src_, dst_;
  NetFn fn_;
  std::string tag_;
};

struct CBoundednessReport {
  Verdict verdict;
  double eps0 = 0.0;
  std::vector<RegionPiece> image;  // K_image, one padded box per dst chart
  SupSeries margins;               // smallest best-chart margin per eps
};

struct SingleChartReport {
  Verdict verdict;
  double eps0 = 0.0;
  std::optional<std::string> chart;
  double margin = 0.0;
};

/// Padded bounding boxes of a point cloud, one per destination chart, each
/// point assigned to the chart in which it has the largest margin.
std::vector<RegionPiece> image_boxes(const Atlas& atlas, const std::vector<Point>& pts, double pad_fraction);

/// "x.x" style description used in witnesses.
std::string describe(const Atlas& atlas, const Point& p);

CBoundednessReport check_cbounded(const MapNet& u, const CompactRegion& K, const Config& cfg);
Verdict check_moderate(const MapNet& u, const CompactRegion& K, const Config& cfg);
/// Sup series of |D^k (psi_b o u_eps o phi_a^{-1})| over one piece of K with
/// no L' restriction. Used for the single-chart counterexample route.
SupSeries local_sup_series(const MapNet& u, const CompactRegion& K, std::size_t piece, int dst_chart, int k,
                           const Config& cfg);

/// sup_K d_h(u_eps, v_eps) on the grid.
SupSeries distance_series(const MapNet& u, const MapNet& v, const CompactRegion& K, const RiemannianMetric& h,
                          const Config& cfg);

/// Order-0 equivalence. parts[0] is the metric route (vanishing and
/// negligible distance), parts[1] the chart route (vanishing and chart-wise
/// k = 0 differences). The status is that of the metric route.
Verdict check_equiv0(const MapNet& u, const MapNet& v, const CompactRegion& K, const RiemannianMetric& h,
                     const Config& cfg);
bool routes_agree(const Verdict& v);

Verdict check_equiv(const MapNet& u, const MapNet& v, const std::vector<CompactRegion>& Ks, const RiemannianMetric& h,
                    const Config& cfg);

SingleChartReport check_single_chart(const MapNet& u, const CompactRegion& K, const Config& cfg);

/// Net eps -> v_eps o u_eps. Probe regions (compacts of X) are used to stamp
/// the single-chart report of v on u's images.
MapNet compose(const MapNet& v, const MapNet& u, const Config& cfg, const std::vector<CompactRegion>& probes = {});

/// Grid values below the midpoint, i.e. the eps range used for eps0.
std::vector<double> tail_eps(const Config& cfg);

}  // namespace gcm
