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

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcm/local_map.hpp"

namespace gcm {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Axis-aligned box; bounds may be infinite.
struct Box {
  Vec lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains_open(std::span<const double> x) const;
  bool contains_closed(std::span<const double> x) const;
  /// Closed box strictly inside this open box.
  bool strictly_contains(const Box& inner) const;
  bool bounded() const;
  /// Normalized distance of x to the boundary, in [0, 0.5]. Unbounded axes are
  /// measured after the compactifying change of variable t = x / (1 + |x|).
  double margin(std::span<const double> x) const;
};

struct Chart {
  std::string id;
  int dim = 1;
  std::vector<Box> domain;  // open boxes; the chart domain is their union
  std::string label;
  int component = 0;

  bool contains(std::span<const double> x) const;
  double margin(std::span<const double> x) const;
};

/// A point stored in chart coordinates.
struct Point {
  int chart = 0;
  Vec x;
};

/// A point with derivative information attached to its coordinates.
struct ChartJets {
  int chart = 0;
  JetVec x;
};

/// Chart atlas of a smooth manifold, immutable once built.
class Atlas {
 public:
  Atlas(std::string name, std::vector<Chart> charts);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int num_charts() const { return static_cast<int>(charts_.size()); }
  const Chart& chart(int i) const { return charts_.at(i); }
  const std::vector<Chart>& charts() const { return charts_; }
  int chart_index(const std::string& id) const;
  int num_components() const;

  /// Registers the transition from chart a to chart b. The map's domain is the
  /// coordinate image of the overlap inside chart a.
  void add_transition(int a, int b, LocalMap t);
  bool has_transition(int a, int b) const;
  const LocalMap& transition_map(int a, int b) const;

  /// Coordinates in chart b of the point with coordinates x in chart a.
  /// Throws NoOverlap / OutOfDomain.
  Vec transition(int a, int b, std::span<const double> x) const;
  JetVec transition(int a, int b, std::span<const Jet> x) const;

  bool contains(const Point& p) const { return chart(p.chart).contains(p.x); }
  /// Re-expresses p in chart b, or nullopt if the point is not covered by b.
  std::optional<Point> to_chart(const Point& p, int b) const;
  std::optional<ChartJets> to_chart(const ChartJets& p, int b) const;
  /// The chart in which p sits farthest from the chart boundary.
  Point best_chart(const Point& p) const;
  /// Largest normalized chart margin of p over all charts covering it.
  double best_margin(const Point& p) const;

 private:
  std::string name_;
  int dim_;
  std::vector<Chart> charts_;
  std::map<std::pair<int, int>, LocalMap> transitions_;
};

using AtlasPtr = std::shared_ptr<const Atlas>;

struct RegionPiece {
  int chart = 0;
  Box box;  // closed box inside the chart domain
};

/// Compact subset given as a finite union of closed chart boxes, sampled on a
/// uniform lattice.
struct CompactRegion {
  std::vector<RegionPiece> pieces;
  int density = 33;
  static constexpr std::size_t kMaxLattice = 100000;

  /// Throws OutOfDomain if a box does not sit strictly inside its chart.
  void validate(const Atlas& atlas) const;
  std::vector<Point> lattice_of(std::size_t piece) const;
  std::vector<Point> lattice() const;
  /// Lattice plus extra uniformly drawn points (deterministic in seed).
  std::vector<Point> sample(std::size_t extra, std::uint64_t seed) const;
  bool contains(const Atlas& atlas, const Point& p) const;
};

/// Riemannian metric given per chart as a symmetric positive-definite matrix
/// field. Built-in manifolds also carry a closed-form distance.
class RiemannianMetric {
 public:
  using Field = std::function<Eigen::MatrixXd(int chart, std::span<const double> x)>;
  using DistanceFn = std::function<double(const Point&, const Point&)>;

  RiemannianMetric(AtlasPtr atlas, Field g, DistanceFn analytic = {});

  const AtlasPtr& atlas() const { return atlas_; }
  Eigen::MatrixXd at(int chart, std::span<const double> x) const { return g_(chart, x); }
  bool analytic_distance_available() const { return static_cast<bool>(analytic_); }
  double analytic_distance(const Point& p, const Point& q) const { return analytic_(p, q); }

  /// Region used by the lattice shortest-path fallback.
  void set_graph_region(CompactRegion region) { graph_region_ = std::move(region); }
  const std::optional<CompactRegion>& graph_region() const { return graph_region_; }

 private:
  AtlasPtr atlas_;
  Field g_;
  DistanceFn analytic_;
  std::optional<CompactRegion> graph_region_;
};

using MetricPtr = std::shared_ptr<const RiemannianMetric>;

struct Manifold {
  AtlasPtr atlas;
  MetricPtr metric;
};

namespace builtin {
/// Open box in R^n with one identity chart "x".
Manifold euclidean(int dim, Vec lo = {}, Vec hi = {});
/// S^1 with angle charts "A" = (-pi, pi) and "B" = (0, 2pi), round metric.
Manifold circle();
/// S^2 with stereographic charts "N" (from the north pole) and "S".
Manifold sphere();
Manifold disjoint_union(const Manifold& a, const Manifold& b);
Manifold product(const Manifold& a, const Manifold& b);

/// Circle point from an angle jet, placed in whichever chart keeps it away
/// from the chart boundary.
ChartJets circle_point(const Jet& angle);
/// Embedding of a stereographic chart point into R^3.
Eigen::Vector3d sphere_embed(const Point& p);
Point sphere_from_embedding(const Eigen::Vector3d& e);
}  // namespace builtin

/// Geodesic distance; kInf across connected components. Uses the closed form
/// when available, otherwise the lattice shortest path on the metric's graph
/// region, refined once.
double distance(const Atlas& atlas, const RiemannianMetric& g, const Point& p, const Point& q);
/// Shortest path on the metric-weighted lattice graph of a region.
double lattice_distance(const Atlas& atlas, const RiemannianMetric& g, const CompactRegion& region,
                        const Point& p, const Point& q);

struct LipschitzBound {
  double C = 0.0;       // returned constant
  double C1 = 1.0;      // combinatorial constant of the neighborhood
  double sup = 0.0;     // lattice sup of |f| + |Df| over the neighborhood
  Box neighborhood;
};

/// Lipschitz constant of f on K built from sup(|f| + |Df|) over a compact
/// neighborhood L of K. Throws MarginTooSmall if L does not fit in the domain.
LipschitzBound lipschitz_bound(const LocalMap& f, const Box& K, double margin_fraction = 0.1,
                               int density = 33);

/// Operator 2-norm.
double operator_norm(const Eigen::MatrixXd& m);

/// Largest |T_ba(T_ab(x)) - x| over sampled overlap points of every stored
/// transition pair.
double transition_roundtrip_error(const Atlas& atlas, int samples_per_pair = 100);
/// Largest cocycle defect |T_bc(T_ab(x)) - T_ac(x)| on sampled triple overlaps.
double cocycle_error(const Atlas& atlas, int samples = 100);

}  // namespace gcm
