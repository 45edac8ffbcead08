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

#include "gcm/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>

#include "gcm/error.hpp"

namespace gcm {

namespace {

double compactify(double v) {
  if (v == kInf) return 1.0;
  if (v == -kInf) return -1.0;
  return v / (1.0 + std::abs(v));
}

double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

bool Box::contains_open(std::span<const double> x) const {
  for (int i = 0; i < dim(); ++i)
    if (!(x[i] > lo[i] && x[i] < hi[i])) return false;
  return true;
}

bool Box::contains_closed(std::span<const double> x) const {
  for (int i = 0; i < dim(); ++i)
    if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
  return true;
}

bool Box::strictly_contains(const Box& inner) const {
  if (inner.dim() != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (!(inner.lo[i] > lo[i] && inner.hi[i] < hi[i] && inner.lo[i] <= inner.hi[i])) return false;
  return true;
}

bool Box::bounded() const {
  for (int i = 0; i < dim(); ++i)
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) return false;
  return true;
}

double Box::margin(std::span<const double> x) const {
  double m = 0.5;
  for (int i = 0; i < dim(); ++i) {
    double a = lo[i], b = hi[i], v = x[i];
    if (!std::isfinite(a) || !std::isfinite(b)) {
      a = compactify(a);
      b = compactify(b);
      v = compactify(v);
    }
    m = std::min(m, std::min(v - a, b - v) / (b - a));
  }
  return m;
}

bool Chart::contains(std::span<const double> x) const {
  return std::any_of(domain.begin(), domain.end(), [&](const Box& b) { return b.contains_open(x); });
}

double Chart::margin(std::span<const double> x) const {
  double m = -kInf;
  for (const auto& b : domain) m = std::max(m, b.margin(x));
  return m;
}

Atlas::Atlas(std::string name, std::vector<Chart> charts) : name_(std::move(name)), charts_(std::move(charts)) {
  if (charts_.empty()) throw Error(ErrorCode::InvalidArgument, "atlas without charts");
  dim_ = charts_.front().dim;
  for (const auto& c : charts_) {
    if (c.dim < 1 || c.dim != dim_) throw Error(ErrorCode::InvalidArgument, "chart dimension mismatch in " + c.id);
    if (c.domain.empty()) throw Error(ErrorCode::InvalidArgument, "empty chart domain " + c.id);
    for (const auto& b : c.domain) {
      if (b.dim() != dim_) throw Error(ErrorCode::InvalidArgument, "domain box dimension in " + c.id);
      for (int i = 0; i < dim_; ++i)
        if (!(b.lo[i] < b.hi[i])) throw Error(ErrorCode::InvalidArgument, "empty domain box in " + c.id);
    }
  }
}

int Atlas::chart_index(const std::string& id) const {
  for (int i = 0; i < num_charts(); ++i)
    if (charts_[i].id == id) return i;
  throw Error(ErrorCode::InvalidArgument, "no chart '" + id + "' in atlas " + name_);
}

int Atlas::num_components() const {
  int n = 0;
  for (const auto& c : charts_) n = std::max(n, c.component + 1);
  return n;
}

void Atlas::add_transition(int a, int b, LocalMap t) { transitions_[{a, b}] = std::move(t); }

bool Atlas::has_transition(int a, int b) const { return a == b || transitions_.count({a, b}) > 0; }

const LocalMap& Atlas::transition_map(int a, int b) const {
  auto it = transitions_.find({a, b});
  if (it == transitions_.end())
    throw Error(ErrorCode::NoOverlap, "no transition " + chart(a).id + " -> " + chart(b).id);
  return it->second;
}

Vec Atlas::transition(int a, int b, std::span<const double> x) const {
  if (a == b) {
    if (!chart(a).contains(x)) throw Error(ErrorCode::OutOfDomain, "point outside chart " + chart(a).id);
    return Vec(x.begin(), x.end());
  }
  const auto& t = transition_map(a, b);
  if (!chart(a).contains(x) || !t.in_domain(x))
    throw Error(ErrorCode::OutOfDomain, "point outside overlap " + chart(a).id + " -> " + chart(b).id);
  return t.value(x);
}

JetVec Atlas::transition(int a, int b, std::span<const Jet> x) const {
  if (a == b) return JetVec(x.begin(), x.end());
  const auto& t = transition_map(a, b);
  const Vec x0 = values(x);
  if (!chart(a).contains(x0) || !t.in_domain(x0))
    throw Error(ErrorCode::OutOfDomain, "point outside overlap " + chart(a).id + " -> " + chart(b).id);
  return t.apply(x);
}

std::optional<Point> Atlas::to_chart(const Point& p, int b) const {
  if (p.chart == b) {
    if (!chart(b).contains(p.x)) return std::nullopt;
    return p;
  }
  auto it = transitions_.find({p.chart, b});
  if (it == transitions_.end()) return std::nullopt;
  if (!chart(p.chart).contains(p.x) || !it->second.in_domain(p.x)) return std::nullopt;
  Point q{b, it->second.value(p.x)};
  if (!chart(b).contains(q.x)) return std::nullopt;
  return q;
}

std::optional<ChartJets> Atlas::to_chart(const ChartJets& p, int b) const {
  if (p.chart == b) {
    if (!chart(b).contains(values(p.x))) return std::nullopt;
    return p;
  }
  auto it = transitions_.find({p.chart, b});
  if (it == transitions_.end()) return std::nullopt;
  const Vec x0 = values(p.x);
  if (!chart(p.chart).contains(x0) || !it->second.in_domain(x0)) return std::nullopt;
  ChartJets q{b, it->second.apply(p.x)};
  if (!chart(b).contains(values(q.x))) return std::nullopt;
  return q;
}

Point Atlas::best_chart(const Point& p) const {
  Point best = p;
  double m = -kInf;
  for (int c = 0; c < num_charts(); ++c) {
    auto q = to_chart(p, c);
    if (!q) continue;
    const double mc = chart(c).margin(q->x);
    if (mc > m) {
      m = mc;
      best = *q;
    }
  }
  return best;
}

double Atlas::best_margin(const Point& p) const {
  double m = -kInf;
  for (int c = 0; c < num_charts(); ++c)
    if (auto q = to_chart(p, c)) m = std::max(m, chart(c).margin(q->x));
  return m;
}

void CompactRegion::validate(const Atlas& atlas) const {
  if (pieces.empty()) throw Error(ErrorCode::InvalidArgument, "compact region without pieces");
  if (density < 1) throw Error(ErrorCode::InvalidArgument, "lattice density must be positive");
  for (const auto& p : pieces) {
    if (p.chart < 0 || p.chart >= atlas.num_charts())
      throw Error(ErrorCode::InvalidArgument, "region piece references unknown chart");
    const auto& c = atlas.chart(p.chart);
    if (p.box.dim() != c.dim) throw Error(ErrorCode::InvalidArgument, "region piece dimension mismatch");
    const bool inside =
        std::any_of(c.domain.begin(), c.domain.end(), [&](const Box& d) { return d.strictly_contains(p.box); });
    if (!inside) throw Error(ErrorCode::OutOfDomain, "region box not strictly inside chart " + c.id);
  }
}

std::vector<Point> CompactRegion::lattice_of(std::size_t k) const {
  const auto& piece = pieces.at(k);
  const int n = piece.box.dim();
  int d = std::max(1, density);
  while (d > 1 && std::pow(static_cast<double>(d), n) > static_cast<double>(kMaxLattice)) --d;
  std::vector<int> per_axis(n);
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    per_axis[i] = piece.box.lo[i] == piece.box.hi[i] ? 1 : d;
    total *= per_axis[i];
  }
  std::vector<Point> out;
  out.reserve(total);
  std::vector<int> idx(n, 0);
  for (std::size_t t = 0; t < total; ++t) {
    Point p{piece.chart, Vec(n)};
    for (int i = 0; i < n; ++i) {
      const double f = per_axis[i] == 1 ? 0.0 : static_cast<double>(idx[i]) / (per_axis[i] - 1);
      p.x[i] = piece.box.lo[i] + f * (piece.box.hi[i] - piece.box.lo[i]);
    }
    out.push_back(std::move(p));
    for (int i = n - 1; i >= 0; --i) {
      if (++idx[i] < per_axis[i]) break;
      idx[i] = 0;
    }
  }
  return out;
}

std::vector<Point> CompactRegion::lattice() const {
  std::vector<Point> out;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    auto l = lattice_of(k);
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

std::vector<Point> CompactRegion::sample(std::size_t extra, std::uint64_t seed) const {
  auto out = lattice();
  if (extra == 0 || pieces.empty()) return out;
  std::mt19937_64 gen(seed);
  for (std::size_t e = 0; e < extra; ++e) {
    const auto& piece = pieces[e % pieces.size()];
    Point p{piece.chart, Vec(piece.box.dim())};
    for (int i = 0; i < piece.box.dim(); ++i)
      p.x[i] = piece.box.lo[i] + uniform01(gen) * (piece.box.hi[i] - piece.box.lo[i]);
    out.push_back(std::move(p));
  }
  return out;
}

bool CompactRegion::contains(const Atlas& atlas, const Point& p) const {
  for (const auto& piece : pieces)
    if (auto q = atlas.to_chart(p, piece.chart); q && piece.box.contains_closed(q->x)) return true;
  return false;
}

RiemannianMetric::RiemannianMetric(AtlasPtr atlas, Field g, DistanceFn analytic)
    : atlas_(std::move(atlas)), g_(std::move(g)), analytic_(std::move(analytic)) {}

double operator_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  if (m.size() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

double distance(const Atlas& atlas, const RiemannianMetric& g, const Point& p, const Point& q) {
  if (atlas.chart(p.chart).component != atlas.chart(q.chart).component) return kInf;
  if (g.analytic_distance_available()) return g.analytic_distance(p, q);
  if (!g.graph_region())
    throw Error(ErrorCode::InvalidArgument, "metric has neither a closed-form distance nor a graph region");
  CompactRegion fine = *g.graph_region();
  fine.density = 2 * fine.density - 1;
  return lattice_distance(atlas, g, fine, p, q);
}

namespace {

struct Graph {
  std::vector<std::vector<std::pair<int, double>>> adj;
  int add_node() {
    adj.emplace_back();
    return static_cast<int>(adj.size()) - 1;
  }
  void link(int a, int b, double w) {
    adj[a].push_back({b, w});
    adj[b].push_back({a, w});
  }
};

double metric_length(const RiemannianMetric& g, int chart, const Vec& from, const Vec& to) {
  const int n = static_cast<int>(from.size());
  Eigen::VectorXd d(n);
  Vec mid(n);
  for (int i = 0; i < n; ++i) {
    d[i] = to[i] - from[i];
    mid[i] = 0.5 * (from[i] + to[i]);
  }
  const Eigen::MatrixXd G = g.at(chart, mid);
  return std::sqrt(std::max(0.0, d.dot(G * d)));
}

struct PieceGrid {
  int chart;
  Box box;
  std::vector<int> per_axis;
  int first_node;
  std::size_t count;

  Vec coords(std::size_t t) const {
    const int n = box.dim();
    Vec x(n);
    for (int i = n - 1; i >= 0; --i) {
      const int k = static_cast<int>(t % per_axis[i]);
      t /= per_axis[i];
      const double f = per_axis[i] == 1 ? 0.0 : static_cast<double>(k) / (per_axis[i] - 1);
      x[i] = box.lo[i] + f * (box.hi[i] - box.lo[i]);
    }
    return x;
  }
  std::size_t flat(const std::vector<int>& idx) const {
    std::size_t t = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) t = t * per_axis[i] + idx[i];
    return t;
  }
  /// Lattice cell corners around x (clamped to the grid).
  std::vector<std::size_t> cell(const Vec& x) const {
    const int n = box.dim();
    std::vector<int> base(n);
    for (int i = 0; i < n; ++i) {
      if (per_axis[i] == 1) {
        base[i] = 0;
        continue;
      }
      const double f = (x[i] - box.lo[i]) / (box.hi[i] - box.lo[i]) * (per_axis[i] - 1);
      base[i] = std::clamp(static_cast<int>(std::floor(f)), 0, per_axis[i] - 2);
    }
    std::vector<std::size_t> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> idx = base;
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        if (mask & (1 << i)) {
          if (per_axis[i] == 1) ok = false;
          idx[i] += 1;
        }
      }
      if (ok) out.push_back(flat(idx));
    }
    return out;
  }
};

}  // namespace

double lattice_distance(const Atlas& atlas, const RiemannianMetric& g, const CompactRegion& region,
                        const Point& p, const Point& q) {
  region.validate(atlas);
  Graph graph;
  std::vector<PieceGrid> grids;
  for (const auto& piece : region.pieces) {
    PieceGrid pg{piece.chart, piece.box, {}, static_cast<int>(graph.adj.size()), 1};
    const int n = piece.box.dim();
    int d = std::max(2, region.density);
    while (d > 2 && std::pow(static_cast<double>(d), n) > static_cast<double>(CompactRegion::kMaxLattice)) --d;
    for (int i = 0; i < n; ++i) {
      pg.per_axis.push_back(piece.box.lo[i] == piece.box.hi[i] ? 1 : d);
      pg.count *= pg.per_axis.back();
    }
    for (std::size_t t = 0; t < pg.count; ++t) graph.add_node();
    grids.push_back(std::move(pg));
  }
  // In-piece edges to all lattice neighbours with positive offset order.
  for (const auto& pg : grids) {
    const int n = pg.box.dim();
    std::vector<int> idx(n, 0);
    for (std::size_t t = 0; t < pg.count; ++t) {
      const Vec x = pg.coords(t);
      const int total_offsets = static_cast<int>(std::pow(3, n));
      for (int o = 0; o < total_offsets; ++o) {
        std::vector<int> off(n);
        int r = o;
        bool positive = false, zero = true, ok = true;
        for (int i = 0; i < n; ++i) {
          off[i] = r % 3 - 1;
          r /= 3;
        }
        for (int i = 0; i < n; ++i) {
          if (off[i] != 0) {
            if (zero) positive = off[i] > 0;
            zero = false;
          }
          const int k = idx[i] + off[i];
          if (k < 0 || k >= pg.per_axis[i]) ok = false;
        }
        if (zero || !positive || !ok) continue;
        std::vector<int> nb(n);
        for (int i = 0; i < n; ++i) nb[i] = idx[i] + off[i];
        const std::size_t u = pg.flat(nb);
        graph.link(pg.first_node + static_cast<int>(t), pg.first_node + static_cast<int>(u),
                   metric_length(g, pg.chart, x, pg.coords(u)));
      }
      for (int i = n - 1; i >= 0; --i) {
        if (++idx[i] < pg.per_axis[i]) break;
        idx[i] = 0;
      }
    }
  }
  // Links between pieces: each node is tied to the cell corners of its image.
  for (std::size_t a = 0; a < grids.size(); ++a) {
    for (std::size_t b = 0; b < grids.size(); ++b) {
      if (a == b) continue;
      for (std::size_t t = 0; t < grids[a].count; ++t) {
        auto y = atlas.to_chart(Point{grids[a].chart, grids[a].coords(t)}, grids[b].chart);
        if (!y || !grids[b].box.contains_closed(y->x)) continue;
        for (std::size_t u : grids[b].cell(y->x))
          graph.link(grids[a].first_node + static_cast<int>(t), grids[b].first_node + static_cast<int>(u),
                     metric_length(g, grids[b].chart, y->x, grids[b].coords(u)));
      }
    }
  }
  auto attach = [&](const Point& pt) {
    const int node = graph.add_node();
    bool linked = false;
    for (const auto& pg : grids) {
      auto y = atlas.to_chart(pt, pg.chart);
      if (!y || !pg.box.contains_closed(y->x)) continue;
      for (std::size_t u : pg.cell(y->x)) {
        graph.link(node, pg.first_node + static_cast<int>(u), metric_length(g, pg.chart, y->x, pg.coords(u)));
        linked = true;
      }
    }
    if (!linked) throw Error(ErrorCode::OutOfDomain, "point outside the distance graph region");
    return node;
  };
  const int src = attach(p);
  const int dst = attach(q);
  // Direct segment when both points share a piece.
  for (const auto& pg : grids) {
    auto yp = atlas.to_chart(p, pg.chart);
    auto yq = atlas.to_chart(q, pg.chart);
    if (yp && yq && pg.box.contains_closed(yp->x) && pg.box.contains_closed(yq->x)) {
      bool near = true;
      for (int i = 0; i < pg.box.dim(); ++i) {
        const double cell = pg.per_axis[i] > 1 ? (pg.box.hi[i] - pg.box.lo[i]) / (pg.per_axis[i] - 1) : 0.0;
        if (std::abs(yp->x[i] - yq->x[i]) > cell) near = false;
      }
      if (near) graph.link(src, dst, metric_length(g, pg.chart, yp->x, yq->x));
    }
  }
  std::vector<double> dist(graph.adj.size(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (u == dst) break;
    for (auto [v, w] : graph.adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        pq.push({dist[v], v});
      }
    }
  }
  return dist[dst];
}

LipschitzBound lipschitz_bound(const LocalMap& f, const Box& K, double margin_fraction, int density) {
  const int n = K.dim();
  LipschitzBound out;
  out.neighborhood = K;
  double delta_min = kInf;
  for (int i = 0; i < n; ++i) {
    const double extent = K.hi[i] - K.lo[i];
    const double delta = margin_fraction * (extent > 0.0 ? extent : 1.0);
    out.neighborhood.lo[i] -= delta;
    out.neighborhood.hi[i] += delta;
    delta_min = std::min(delta_min, delta);
  }
  CompactRegion L{{RegionPiece{0, out.neighborhood}}, density};
  const auto pts = L.lattice();
  for (const auto& p : pts)
    if (!f.in_domain(p.x)) throw Error(ErrorCode::MarginTooSmall, "no compact neighborhood of K fits in the domain");
  // A cut-off rising from 0 to 1 across the margin has slope about 2 / delta.
  out.C1 = std::max(1.0, 2.0 / delta_min);
  for (const auto& p : pts) {
    const JetVec e = f.expand(p.x, 1);
    Eigen::VectorXd v(f.out_dim());
    Eigen::MatrixXd J(f.out_dim(), n);
    for (int r = 0; r < f.out_dim(); ++r) {
      v[r] = e[r].value();
      for (int c = 0; c < n; ++c) {
        std::vector<int> a(n, 0);
        a[c] = 1;
        J(r, c) = e[r].partial(a);
      }
    }
    out.sup = std::max(out.sup, v.norm() + operator_norm(J));
  }
  out.C = out.C1 * out.sup;
  return out;
}

namespace {

Vec sample_in_chart(const Chart& c, std::mt19937_64& gen) {
  const Box& b = c.domain[gen() % c.domain.size()];
  Vec x(c.dim);
  for (int i = 0; i < c.dim; ++i) {
    const double lo = std::max(b.lo[i], -10.0), hi = std::min(b.hi[i], 10.0);
    x[i] = lo + uniform01(gen) * (hi - lo);
  }
  return x;
}

double vec_dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

double transition_roundtrip_error(const Atlas& atlas, int samples_per_pair) {
  std::mt19937_64 gen(7);
  double worst = 0.0;
  for (int a = 0; a < atlas.num_charts(); ++a) {
    for (int b = 0; b < atlas.num_charts(); ++b) {
      if (a == b || !atlas.has_transition(a, b) || !atlas.has_transition(b, a)) continue;
      int got = 0;
      for (int tries = 0; got < samples_per_pair && tries < 100 * samples_per_pair; ++tries) {
        const Vec x = sample_in_chart(atlas.chart(a), gen);
        auto y = atlas.to_chart(Point{a, x}, b);
        if (!y) continue;
        auto z = atlas.to_chart(*y, a);
        if (!z) continue;
        worst = std::max(worst, vec_dist(z->x, x));
        ++got;
      }
    }
  }
  return worst;
}

double cocycle_error(const Atlas& atlas, int samples) {
  std::mt19937_64 gen(11);
  double worst = 0.0;
  const int n = atlas.num_charts();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        if (!atlas.has_transition(a, b) || !atlas.has_transition(b, c) || !atlas.has_transition(a, c)) continue;
        int got = 0;
        for (int tries = 0; got < samples && tries < 100 * samples; ++tries) {
          const Vec x = sample_in_chart(atlas.chart(a), gen);
          auto y = atlas.to_chart(Point{a, x}, b);
          if (!y) continue;
          auto z1 = atlas.to_chart(*y, c);
          auto z2 = atlas.to_chart(Point{a, x}, c);
          if (!z1 || !z2) continue;
          worst = std::max(worst, vec_dist(z1->x, z2->x));
          ++got;
        }
      }
  return worst;
}

}  // namespace gcm
