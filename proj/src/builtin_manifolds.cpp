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

#include <cmath>
#include <limits>
#include <numbers>

#include "gcm/error.hpp"
#include "gcm/manifold.hpp"

namespace gcm::builtin {

namespace {

constexpr double kPi = std::numbers::pi;

Box full_box(int dim) { return Box{Vec(dim, -kInf), Vec(dim, kInf)}; }

double angle_of(const Point& p) { return p.x[0]; }

}  // namespace

Manifold euclidean(int dim, Vec lo, Vec hi) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "euclidean dimension must be positive");
  if (lo.empty()) lo.assign(dim, -kInf);
  if (hi.empty()) hi.assign(dim, kInf);
  if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
    throw Error(ErrorCode::InvalidArgument, "euclidean bounds dimension mismatch");
  Chart c{"x", dim, {Box{lo, hi}}, "R^" + std::to_string(dim), 0};
  auto atlas = std::make_shared<Atlas>("euclidean", std::vector<Chart>{c});
  auto metric = std::make_shared<RiemannianMetric>(
      atlas, [dim](int, std::span<const double>) { return Eigen::MatrixXd::Identity(dim, dim); },
      [](const Point& p, const Point& q) {
        // One convex chart: the straight segment is the geodesic.
        double s = 0.0;
        for (std::size_t i = 0; i < p.x.size(); ++i) s += (p.x[i] - q.x[i]) * (p.x[i] - q.x[i]);
        return std::sqrt(s);
      });
  return {atlas, metric};
}

Manifold circle() {
  Chart a{"A", 1, {Box{{-kPi}, {kPi}}}, "angle in (-pi, pi)", 0};
  Chart b{"B", 1, {Box{{0.0}, {2 * kPi}}}, "angle in (0, 2pi)", 0};
  auto atlas = std::make_shared<Atlas>("circle", std::vector<Chart>{a, b});
  atlas->add_transition(
      0, 1,
      LocalMap::exact(
          1, 1, [](std::span<const Jet> x) { return JetVec{x[0].value() > 0 ? x[0] : x[0].shifted(2 * kPi)}; },
          [](std::span<const double> x) { return x[0] != 0.0; }));
  atlas->add_transition(
      1, 0,
      LocalMap::exact(
          1, 1, [](std::span<const Jet> x) { return JetVec{x[0].value() < kPi ? x[0] : x[0].shifted(-2 * kPi)}; },
          [](std::span<const double> x) { return x[0] != kPi; }));
  auto metric = std::make_shared<RiemannianMetric>(
      atlas, [](int, std::span<const double>) { return Eigen::MatrixXd::Identity(1, 1); },
      [](const Point& p, const Point& q) { return std::abs(std::remainder(angle_of(p) - angle_of(q), 2 * kPi)); });
  return {atlas, metric};
}

ChartJets circle_point(const Jet& angle) {
  const double theta = angle.value();
  const double wrapped = std::remainder(theta, 2 * kPi);
  if (std::abs(wrapped) <= kPi / 2) return {0, {angle.shifted(wrapped - theta)}};
  const double b = wrapped < 0 ? wrapped + 2 * kPi : wrapped;
  return {1, {angle.shifted(b - theta)}};
}

namespace {

JetVec invert_jets(std::span<const Jet> x) {
  const Jet r2 = x[0] * x[0] + x[1] * x[1];
  const Jet inv = recip(r2);
  return {x[0] * inv, x[1] * inv};
}

}  // namespace

Manifold sphere() {
  Chart n{"N", 2, {full_box(2)}, "stereographic from the north pole", 0};
  Chart s{"S", 2, {full_box(2)}, "stereographic from the south pole", 0};
  auto atlas = std::make_shared<Atlas>("sphere", std::vector<Chart>{n, s});
  auto nonzero = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] >= std::numeric_limits<double>::min(); };
  atlas->add_transition(0, 1, LocalMap::exact(2, 2, invert_jets, nonzero));
  atlas->add_transition(1, 0, LocalMap::exact(2, 2, invert_jets, nonzero));
  auto metric = std::make_shared<RiemannianMetric>(
      atlas,
      [](int, std::span<const double> x) {
        const double r2 = x[0] * x[0] + x[1] * x[1];
        const double f = 4.0 / ((1.0 + r2) * (1.0 + r2));
        return Eigen::MatrixXd(f * Eigen::MatrixXd::Identity(2, 2));
      },
      [](const Point& p, const Point& q) {
        const Eigen::Vector3d a = sphere_embed(p), b = sphere_embed(q);
        return std::atan2(a.cross(b).norm(), a.dot(b));
      });
  return {atlas, metric};
}

Eigen::Vector3d sphere_embed(const Point& p) {
  const double x = p.x[0], y = p.x[1];
  const double r2 = x * x + y * y;
  const double z = (r2 - 1.0) / (r2 + 1.0);
  return {2 * x / (1 + r2), 2 * y / (1 + r2), p.chart == 0 ? z : -z};
}

Point sphere_from_embedding(const Eigen::Vector3d& e) {
  const Eigen::Vector3d u = e.normalized();
  if (u.z() <= 0) return {0, {u.x() / (1 - u.z()), u.y() / (1 - u.z())}};
  return {1, {u.x() / (1 + u.z()), u.y() / (1 + u.z())}};
}

Manifold disjoint_union(const Manifold& m0, const Manifold& m1) {
  const auto& a = *m0.atlas;
  const auto& b = *m1.atlas;
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidArgument, "disjoint union of different dimensions");
  std::vector<Chart> charts;
  for (const auto& c : a.charts()) {
    Chart d = c;
    d.id = "0:" + c.id;
    charts.push_back(d);
  }
  const int offset = a.num_charts();
  const int comp_offset = a.num_components();
  for (const auto& c : b.charts()) {
    Chart d = c;
    d.id = "1:" + c.id;
    d.component += comp_offset;
    charts.push_back(d);
  }
  auto atlas = std::make_shared<Atlas>(a.name() + "+" + b.name(), charts);
  for (int i = 0; i < a.num_charts(); ++i)
    for (int j = 0; j < a.num_charts(); ++j)
      if (i != j && a.has_transition(i, j)) atlas->add_transition(i, j, a.transition_map(i, j));
  for (int i = 0; i < b.num_charts(); ++i)
    for (int j = 0; j < b.num_charts(); ++j)
      if (i != j && b.has_transition(i, j)) atlas->add_transition(i + offset, j + offset, b.transition_map(i, j));
  auto g0 = m0.metric, g1 = m1.metric;
  auto local = [offset](const Point& p) { return p.chart < offset ? p : Point{p.chart - offset, p.x}; };
  RiemannianMetric::DistanceFn dist;
  if (g0->analytic_distance_available() && g1->analytic_distance_available()) {
    dist = [g0, g1, offset, local](const Point& p, const Point& q) {
      const bool lp = p.chart < offset, lq = q.chart < offset;
      if (lp != lq) return kInf;
      return lp ? g0->analytic_distance(p, q) : g1->analytic_distance(local(p), local(q));
    };
  }
  auto metric = std::make_shared<RiemannianMetric>(
      atlas,
      [g0, g1, offset](int c, std::span<const double> x) { return c < offset ? g0->at(c, x) : g1->at(c - offset, x); },
      dist);
  return {atlas, metric};
}

Manifold product(const Manifold& m0, const Manifold& m1) {
  const auto& a = *m0.atlas;
  const auto& b = *m1.atlas;
  const int da = a.dim(), db = b.dim();
  const int nb = b.num_charts();
  std::vector<Chart> charts;
  for (const auto& ca : a.charts()) {
    for (const auto& cb : b.charts()) {
      Chart c{ca.id + "*" + cb.id, da + db, {}, ca.label + " x " + cb.label,
              ca.component * b.num_components() + cb.component};
      for (const auto& ba : ca.domain)
        for (const auto& bb : cb.domain) {
          Box box = ba;
          box.lo.insert(box.lo.end(), bb.lo.begin(), bb.lo.end());
          box.hi.insert(box.hi.end(), bb.hi.begin(), bb.hi.end());
          c.domain.push_back(box);
        }
      charts.push_back(c);
    }
  }
  auto atlas = std::make_shared<Atlas>(a.name() + "x" + b.name(), charts);
  auto aptr = m0.atlas, bptr = m1.atlas;
  for (int i = 0; i < a.num_charts(); ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < a.num_charts(); ++k)
        for (int l = 0; l < nb; ++l) {
          if (i == k && j == l) continue;
          if (!a.has_transition(i, k) || !b.has_transition(j, l)) continue;
          JetFn fn = [aptr, bptr, i, j, k, l, da](std::span<const Jet> x) {
            JetVec out = aptr->transition(i, k, x.subspan(0, da));
            JetVec tail = bptr->transition(j, l, x.subspan(da));
            out.insert(out.end(), tail.begin(), tail.end());
            return out;
          };
          DomainFn dom = [aptr, bptr, i, j, k, l, da](std::span<const double> x) {
            const bool oa = i == k || aptr->transition_map(i, k).in_domain(x.subspan(0, da));
            const bool ob = j == l || bptr->transition_map(j, l).in_domain(x.subspan(da));
            return oa && ob;
          };
          atlas->add_transition(i * nb + j, k * nb + l, LocalMap::exact(da + db, da + db, fn, dom));
        }
  auto g0 = m0.metric, g1 = m1.metric;
  auto split = [da, nb](const Point& p) {
    Point pa{p.chart / nb, Vec(p.x.begin(), p.x.begin() + da)};
    Point pb{p.chart % nb, Vec(p.x.begin() + da, p.x.end())};
    return std::make_pair(pa, pb);
  };
  RiemannianMetric::DistanceFn dist;
  if (g0->analytic_distance_available() && g1->analytic_distance_available()) {
    dist = [g0, g1, split](const Point& p, const Point& q) {
      auto [pa, pb] = split(p);
      auto [qa, qb] = split(q);
      const double d0 = g0->analytic_distance(pa, qa), d1 = g1->analytic_distance(pb, qb);
      return std::sqrt(d0 * d0 + d1 * d1);
    };
  }
  auto metric = std::make_shared<RiemannianMetric>(
      atlas,
      [g0, g1, da, db, nb](int c, std::span<const double> x) {
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(da + db, da + db);
        G.topLeftCorner(da, da) = g0->at(c / nb, x.subspan(0, da));
        G.bottomRightCorner(db, db) = g1->at(c % nb, x.subspan(da));
        return G;
      },
      dist);
  return {atlas, metric};
}

}  // namespace gcm::builtin
