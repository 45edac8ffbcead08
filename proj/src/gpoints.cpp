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

#include "gcm/gpoints.hpp"

#include <algorithm>
#include <cmath>

#include "gcm/error.hpp"
#include "gcm/parallel.hpp"

namespace gcm {

namespace {

double max_abs_diff(const Vec& a, const Vec& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double max_abs(const Vec& a) {
  double m = 0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace

GenPoint GenPoint::from_net(AtlasPtr atlas, std::function<Point(double)> at, const Config& cfg, std::string tag) {
  std::vector<Point> pts;
  for (double e : EpsGrid(cfg.eps_grid).values()) pts.push_back(at(e));
  GenPoint p{atlas, std::move(at), CompactRegion{image_boxes(*atlas, pts, cfg.pad_fraction), cfg.lattice_density}, 1.0,
             std::move(tag)};
  p.support.validate(*atlas);
  return p;
}

GenPoint GenPoint::constant(AtlasPtr atlas, const Point& x, const Config& cfg, std::string tag) {
  return from_net(std::move(atlas), [x](double) { return x; }, cfg, std::move(tag));
}

void GenPoint::validate(const Config& cfg) const {
  support.validate(*atlas);
  for (double e : EpsGrid(cfg.eps_grid).values()) {
    if (e >= eps0) continue;
    const Point p = at(e);
    if (!support.contains(*atlas, p))
      throw Error(ErrorCode::SupportEscape, tag + ": " + describe(*atlas, p) + " at eps=" + std::to_string(e) +
                                                " is outside the support");
  }
}

SupSeries GenNumber::series(const Config& cfg) const {
  SupSeries s;
  s.context = "|" + tag_ + "|";
  for (double e : EpsGrid(cfg.eps_grid).values()) s.add(e, fn_(e));
  return s;
}

Verdict GenNumber::check_moderate(const Config& cfg) {
  auto v = judge_moderate(series(cfg), cfg);
  moderate_bound = v.estimate;
  return v;
}

GenNumber operator+(const GenNumber& a, const GenNumber& b) {
  return GenNumber([f = a.fn_, g = b.fn_](double e) { return f(e) + g(e); }, a.tag_ + "+" + b.tag_);
}

GenNumber operator-(const GenNumber& a, const GenNumber& b) {
  return GenNumber([f = a.fn_, g = b.fn_](double e) { return f(e) - g(e); }, a.tag_ + "-" + b.tag_);
}

GenNumber operator*(const GenNumber& a, const GenNumber& b) {
  return GenNumber([f = a.fn_, g = b.fn_](double e) { return f(e) * g(e); }, a.tag_ + "*" + b.tag_);
}

Verdict numbers_equal(const GenNumber& a, const GenNumber& b, const Config& cfg) {
  SupSeries s;
  s.context = "|" + a.tag() + " - " + b.tag() + "|";
  for (double e : EpsGrid(cfg.eps_grid).values()) {
    const double x = a.at(e), y = b.at(e);
    double d = std::fabs(x - y);
    if (d <= cfg.noise_floor * (1.0 + std::max(std::fabs(x), std::fabs(y)))) d = 0.0;
    s.add(e, d);
  }
  auto v = judge_negligible(s, cfg);
  v.check = "numbers-equal";
  return v;
}

Verdict points_equal(const GenPoint& p, const GenPoint& q, const RiemannianMetric& g, const Config& cfg) {
  const Atlas& A = *p.atlas;
  const auto eps = EpsGrid(cfg.eps_grid).values();
  SupSeries metric, chart;
  metric.context = "d(" + p.tag + ", " + q.tag + ")";
  chart.context = "|phi(" + p.tag + ") - phi(" + q.tag + ")|";
  std::vector<int> order;
  for (const auto* s : {&p.support, &q.support})
    for (const auto& piece : s->pieces)
      if (std::find(order.begin(), order.end(), piece.chart) == order.end()) order.push_back(piece.chart);
  for (int c = 0; c < A.num_charts(); ++c)
    if (std::find(order.begin(), order.end(), c) == order.end()) order.push_back(c);

  for (double e : eps) {
    const Point a = p.at(e), b = q.at(e);
    double d = distance(A, g, a, b);
    if (d <= cfg.noise_floor * (1.0 + std::max(max_abs(a.x), max_abs(b.x)))) d = 0.0;
    metric.add(e, d, describe(A, a));
    bool shared = false;
    for (int c : order) {
      auto ac = A.to_chart(a, c);
      auto bc = A.to_chart(b, c);
      if (!ac || !bc) continue;
      double dc = max_abs_diff(ac->x, bc->x);
      if (dc <= cfg.noise_floor * (1.0 + std::max(max_abs(ac->x), max_abs(bc->x)))) dc = 0.0;
      chart.add(e, dc, describe(A, *ac));
      shared = true;
      break;
    }
    if (!shared) chart.add_log(e, kInf, "no shared chart");
  }
  auto m = judge_negligible(metric, cfg);
  m.label = "metric";
  auto c = judge_negligible(chart, cfg);
  c.label = "chart";
  Verdict out;
  out.check = "points-equal";
  out.label = p.tag + " = " + q.tag;
  out.status = m.status;
  out.estimate = m.estimate;
  out.witness = m.witness;
  out.order = m.order;
  out.notes.push_back(m.status == c.status ? "routes agree" : "routes disagree");
  out.parts = {m, c};
  return out;
}

GenPoint eval_at(const MapNet& u, const GenPoint& p, const Config& cfg) {
  auto at = [u, pa = p.at](double e) {
    const Point x = pa(e);
    std::optional<Point> y;
    try {
      y = u.value(e, x);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::ChartEscape) throw;
    }
    if (!y) throw Error(ErrorCode::SupportEscape, u.tag() + " is undefined at " + describe(*u.src(), x));
    return *y;
  };
  return GenPoint::from_net(u.dst(), at, cfg, u.tag() + "(" + p.tag + ")");
}

std::size_t grid_slot(const std::vector<double>& grid, double eps) {
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (eps > grid[i + 1]) return i;
  return grid.empty() ? 0 : grid.size() - 1;
}

std::optional<Separation> separate_by_points(const MapNet& u, const MapNet& v, const CompactRegion& K,
                                             const RiemannianMetric& h, const Config& cfg, int trials) {
  auto e0 = check_equiv0(u, v, K, h, cfg);
  if (e0.pass()) return std::nullopt;
  const auto eps = EpsGrid(cfg.eps_grid).values();
  const auto pts = K.sample(static_cast<std::size_t>(std::max(0, trials)), cfg.seed);
  std::vector<Point> argmax(eps.size(), pts.front());
  parallel_for(eps.size(), [&](std::size_t k) {
    double best = -1.0;
    for (const auto& p : pts) {
      auto a = u.value(eps[k], p);
      auto b = v.value(eps[k], p);
      if (!a || !b) continue;
      const double d = distance(*u.dst(), h, *a, *b);
      if (d > best) {
        best = d;
        argmax[k] = p;
      }
    }
  });
  auto at = [eps, argmax](double e) { return argmax[grid_slot(eps, e)]; };
  auto w = GenPoint::from_net(u.src(), at, cfg, "argmax(" + u.tag() + "," + v.tag() + ")");
  auto ev = points_equal(eval_at(u, w, cfg), eval_at(v, w, cfg), h, cfg);
  return Separation{std::move(w), std::move(ev), std::move(e0)};
}

}  // namespace gcm
