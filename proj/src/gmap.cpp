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

#include "gcm/gmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "gcm/error.hpp"
#include "gcm/parallel.hpp"

namespace gcm {

namespace {

/// Largest |d^alpha f_i| over |alpha| = k; NaN (inf * 0 in a jet) reads as overflow.
double norm_k(std::span<const Jet> f, int k) {
  double m = 0.0;
  for (const auto& c : f) {
    const double v = c.max_partial(k);
    if (std::isnan(v) || std::isnan(c.value())) return kInf;
    m = std::max(m, v);
  }
  return m;
}

double diff_norm_k(std::span<const Jet> f, std::span<const Jet> g, int k, double floor) {
  double m = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) {
    const auto& L = *f[c].layout();
    for (std::size_t i = 0; i < L.size(); ++i) {
      if (L.degree(i) != k) continue;
      const double a = f[c].coeffs()[i] * L.factorial(i);
      const double b = g[c].coeffs()[i] * L.factorial(i);
      const double d = std::fabs(a - b);
      if (std::isnan(d)) return kInf;
      if (d <= floor * (1.0 + std::max(std::fabs(a), std::fabs(b)))) continue;
      m = std::max(m, d);
    }
  }
  return m;
}

/// Running supremum with the location where it is attained.
struct SupAcc {
  double sup = 0.0;
  std::string where;
  bool any = false;
  void add(double v, const std::function<std::string()>& loc) {
    if (!any || v > sup) {
      sup = v;
      where = loc();
    }
    any = true;
  }
};

double max_abs(std::span<const double> x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

std::string fmt_coords(std::span<const double> x) {
  std::string s = "(";
  char buf[40];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.9g", i ? "," : "", x[i]);
    s += buf;
  }
  return s + ")";
}

/// Sampled images u_eps(x) for each eps (outer) and sample point (inner).
std::vector<std::vector<std::optional<Point>>> images(const MapNet& u, const std::vector<Point>& pts,
                                                       const std::vector<double>& eps) {
  std::vector<std::vector<std::optional<Point>>> out(eps.size());
  parallel_for(eps.size(), [&](std::size_t i) {
    out[i].reserve(pts.size());
    for (const auto& p : pts) out[i].push_back(u.value(eps[i], p));
  });
  return out;
}

Box hull(const Box& a, const Box& b) {
  Box h = a;
  for (int i = 0; i < a.dim(); ++i) {
    h.lo[i] = std::min(a.lo[i], b.lo[i]);
    h.hi[i] = std::max(a.hi[i], b.hi[i]);
  }
  return h;
}

std::map<int, Box> merged_boxes(const std::vector<RegionPiece>& a, const std::vector<RegionPiece>& b) {
  std::map<int, Box> out;
  for (const auto* list : {&a, &b})
    for (const auto& p : *list) {
      auto it = out.find(p.chart);
      if (it == out.end())
        out.emplace(p.chart, p.box);
      else
        it->second = hull(it->second, p.box);
    }
  return out;
}

std::string piece_label(const Atlas& src, const CompactRegion& K, std::size_t i) {
  return "L" + std::to_string(i) + "[" + src.chart(K.pieces[i].chart).id + "]";
}

/// Chart-wise derivative differences for equivalence: for every
/// piece of K and every chart b of L' = hull of both image boxes, the series
/// of max_{|alpha|=k} |d^alpha(psi_b u - psi_b v)| for k = 0..kmax, with
/// points excluded unless both images lie in L'_b.
std::vector<Verdict> chartwise_differences(const MapNet& u, const MapNet& v, const CompactRegion& K,
                                           const std::vector<RegionPiece>& Lu, const std::vector<RegionPiece>& Lv,
                                           int kmax, const Config& cfg) {
  const auto Lp = merged_boxes(Lu, Lv);
  const auto eps = EpsGrid(cfg.eps_grid).values();
  const Atlas& X = *u.src();
  const Atlas& Y = *u.dst();
  std::vector<Verdict> parts;
  for (std::size_t pi = 0; pi < K.pieces.size(); ++pi) {
    const int a = K.pieces[pi].chart;
    const auto pts = K.lattice_of(pi);
    // acc[eps][chart slot][k]
    std::vector<std::vector<std::vector<SupAcc>>> acc(
        eps.size(), std::vector<std::vector<SupAcc>>(Lp.size(), std::vector<SupAcc>(kmax + 1)));
    parallel_for(eps.size(), [&](std::size_t e) {
      for (const auto& p : pts) {
        const auto jets = seed(p.x, kmax);
        auto yu = u.eval(eps[e], a, jets);
        auto yv = v.eval(eps[e], a, jets);
        if (!yu || !yv) continue;
        std::size_t slot = 0;
        for (const auto& [b, box] : Lp) {
          auto ub = Y.to_chart(*yu, b);
          auto vb = Y.to_chart(*yv, b);
          if (ub && vb && box.contains_closed(values(ub->x)) && box.contains_closed(values(vb->x))) {
            for (int k = 0; k <= kmax; ++k)
              acc[e][slot][k].add(diff_norm_k(ub->x, vb->x, k, cfg.noise_floor),
                                  [&] { return describe(X, p); });
          }
          ++slot;
        }
      }
    });
    std::size_t slot = 0;
    for (const auto& entry : Lp) {
      const int b = entry.first;
      for (int k = 0; k <= kmax; ++k) {
        SupSeries s;
        s.context = piece_label(X, K, pi) + "->" + Y.chart(b).id + " k=" + std::to_string(k);
        for (std::size_t e = 0; e < eps.size(); ++e) {
          const auto& A = acc[e][slot][k];
          s.add(eps[e], A.any ? A.sup : 0.0, A.where, !A.any);
        }
        parts.push_back(judge_negligible(s, cfg));
      }
      ++slot;
    }
  }
  return parts;
}

std::vector<Point> tail_images(const MapNet& u, const CompactRegion& K, const Config& cfg) {
  const auto eps = tail_eps(cfg);
  const auto pts = K.sample(cfg.random_extra, cfg.seed);
  std::vector<Point> out;
  for (auto& row : images(u, pts, eps))
    for (auto& q : row)
      if (q) out.push_back(*q);
  return out;
}

}  // namespace

std::optional<ChartJets> SmoothMap::eval(int src_chart, std::span<const Jet> x) const {
  return home(src_chart, x);
}

std::optional<Point> SmoothMap::value(const Point& p) const {
  auto y = home(p.chart, seed(p.x, 0));
  if (!y) return std::nullopt;
  return Point{y->chart, values(y->x)};
}

std::optional<JetVec> SmoothMap::local(int a, int b, std::span<const Jet> x) const {
  auto y = home(a, x);
  if (!y) return std::nullopt;
  auto z = dst->to_chart(*y, b);
  if (!z) return std::nullopt;
  return z->x;
}

MapNet::MapNet(AtlasPtr src, AtlasPtr dst, NetFn fn, std::string tag)
    : src_(std::move(src)), dst_(std::move(dst)), fn_(std::move(fn)), tag_(std::move(tag)) {}

MapNet MapNet::constant(const SmoothMap& f, std::string tag) {
  auto home = f.home;
  return MapNet(f.src, f.dst, [home](double, int a, std::span<const Jet> x) { return home(a, x); }, std::move(tag));
}

SmoothMap MapNet::at(double eps) const {
  auto fn = fn_;
  return SmoothMap{src_, dst_, [fn, eps](int a, std::span<const Jet> x) { return fn(eps, a, x); }};
}

std::optional<ChartJets> MapNet::eval(double eps, int src_chart, std::span<const Jet> x) const {
  auto y = fn_(eps, src_chart, x);
  if (!y) return std::nullopt;
  if (y->chart < 0 || y->chart >= dst_->num_charts())
    throw Error(ErrorCode::ChartEscape, tag_ + ": image references unknown chart");
  const Vec v = values(y->x);
  bool finite = true;
  for (double c : v) finite = finite && std::isfinite(c);
  // Overflowed coordinates are passed through so that growth checks can flag them.
  if (!finite || dst_->chart(y->chart).contains(v)) return y;
  throw Error(ErrorCode::ChartEscape, tag_ + ": image " + fmt_coords(v) + " at eps=" + std::to_string(eps) +
                                          " lies outside chart " + dst_->chart(y->chart).id);
}

std::optional<Point> MapNet::value(double eps, const Point& p) const {
  auto y = eval(eps, p.chart, seed(p.x, 0));
  if (!y) return std::nullopt;
  return Point{y->chart, values(y->x)};
}

std::string describe(const Atlas& atlas, const Point& p) { return atlas.chart(p.chart).id + ":" + fmt_coords(p.x); }

std::vector<double> tail_eps(const Config& cfg) {
  EpsGrid g(cfg.eps_grid);
  const double mid = g.midpoint() * (1.0 + 1e-12);
  std::vector<double> out;
  for (double e : g.values())
    if (e <= mid) out.push_back(e);
  return out;
}

std::vector<RegionPiece> image_boxes(const Atlas& atlas, const std::vector<Point>& pts, double pad_fraction) {
  std::map<int, Box> boxes;
  for (const auto& p : pts) {
    Point q = atlas.best_chart(p);
    auto it = boxes.find(q.chart);
    if (it == boxes.end()) {
      boxes.emplace(q.chart, Box{q.x, q.x});
      continue;
    }
    for (std::size_t i = 0; i < q.x.size(); ++i) {
      it->second.lo[i] = std::min(it->second.lo[i], q.x[i]);
      it->second.hi[i] = std::max(it->second.hi[i], q.x[i]);
    }
  }
  std::vector<RegionPiece> out;
  for (auto& [c, box] : boxes) {
    const Chart& ch = atlas.chart(c);
    const Box* dom = nullptr;
    for (const auto& d : ch.domain)
      if (d.contains_closed(box.lo) && d.contains_closed(box.hi)) dom = &d;
    Box padded = box;
    if (dom) {
      for (int i = 0; i < box.dim(); ++i) {
        const double ext = box.hi[i] - box.lo[i];
        const double pad = std::max(pad_fraction * ext, 1e-6 * (1.0 + std::fabs(0.5 * (box.lo[i] + box.hi[i]))));
        padded.lo[i] = std::max(box.lo[i] - pad, 0.5 * (box.lo[i] + dom->lo[i]));
        padded.hi[i] = std::min(box.hi[i] + pad, 0.5 * (box.hi[i] + dom->hi[i]));
      }
    }
    out.push_back(RegionPiece{c, padded});
  }
  return out;
}

CBoundednessReport check_cbounded(const MapNet& u, const CompactRegion& K, const Config& cfg) {
  K.validate(*u.src());
  const Atlas& Y = *u.dst();
  EpsGrid grid(cfg.eps_grid);
  const auto eps = grid.values();
  const auto pts = K.sample(cfg.random_extra, cfg.seed);
  const auto imgs = images(u, pts, eps);

  CBoundednessReport r;
  r.eps0 = grid.midpoint();
  r.verdict.check = "c-bounded";
  r.verdict.label = "c-bounded";
  r.margins.context = u.tag() + " best-chart margin";
  const double mid = r.eps0 * (1.0 + 1e-12);
  double head_min = kInf, tail_min = kInf;
  Witness w;
  std::vector<Point> tail;
  for (std::size_t e = 0; e < eps.size(); ++e) {
    double m = kInf;
    std::string where;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& q = imgs[e][i];
      if (!q) continue;
      double mq = Y.best_margin(*q);
      if (!std::isfinite(mq)) mq = 0.0;
      if (mq < m) {
        m = mq;
        where = describe(*u.src(), pts[i]) + " -> " + describe(Y, *q);
      }
      if (eps[e] <= mid) tail.push_back(*q);
    }
    if (!std::isfinite(m)) continue;
    r.margins.add(eps[e], m, where);
    if (eps[e] <= mid) {
      if (m < tail_min) {
        tail_min = m;
        w = Witness{eps[e], where, m > 0 ? std::log(m) : -kInf};
      }
    } else {
      head_min = std::min(head_min, m);
    }
  }
  try {
    r.verdict.estimate = fit_order(r.margins);
  } catch (const Error&) {
  }
  r.verdict.series = r.margins;
  if (tail.empty()) {
    r.verdict.status = Status::Inconclusive;
    r.verdict.notes.push_back("no sampled images for small eps");
    return r;
  }
  if (tail_min < cfg.margin_min && (tail_min <= 0.0 || tail_min < 0.5 * head_min)) {
    r.verdict.status = Status::Fail;
    r.verdict.witness = w;
    r.verdict.notes.push_back("images approach the boundary of every chart as eps decreases");
    return r;
  }
  r.verdict.status = Status::Pass;
  r.image = image_boxes(Y, tail, cfg.pad_fraction);
  return r;
}

SupSeries local_sup_series(const MapNet& u, const CompactRegion& K, std::size_t piece, int b, int k,
                           const Config& cfg) {
  const auto eps = EpsGrid(cfg.eps_grid).values();
  const auto pts = K.lattice_of(piece);
  const int a = K.pieces.at(piece).chart;
  std::vector<SupAcc> acc(eps.size());
  parallel_for(eps.size(), [&](std::size_t e) {
    for (const auto& p : pts) {
      auto y = u.eval(eps[e], a, seed(p.x, k));
      if (!y) continue;
      std::optional<ChartJets> yb;
      if (y->chart == b) {
        yb = y;
      } else {
        yb = u.dst()->to_chart(*y, b);
      }
      if (!yb) continue;
      acc[e].add(norm_k(yb->x, k), [&] { return describe(*u.src(), p); });
    }
  });
  SupSeries s;
  s.context = u.tag() + " " + piece_label(*u.src(), K, piece) + "->" + u.dst()->chart(b).id + " k=" + std::to_string(k);
  for (std::size_t e = 0; e < eps.size(); ++e) s.add(eps[e], acc[e].any ? acc[e].sup : 0.0, acc[e].where, !acc[e].any);
  return s;
}

Verdict check_moderate(const MapNet& u, const CompactRegion& K, const Config& cfg) {
  auto cb = check_cbounded(u, K, cfg);
  if (!cb.verdict.pass()) {
    Verdict v = cb.verdict;
    v.check = "moderate";
    v.notes.push_back("c-boundedness precondition not met");
    v.parts = {cb.verdict};
    return v;
  }
  const Atlas& X = *u.src();
  const Atlas& Y = *u.dst();
  const auto eps = EpsGrid(cfg.eps_grid).values();
  const int kmax = cfg.k_max;
  std::vector<Verdict> parts{cb.verdict};
  for (std::size_t pi = 0; pi < K.pieces.size(); ++pi) {
    const int a = K.pieces[pi].chart;
    const auto pts = K.lattice_of(pi);
    std::vector<std::vector<std::vector<SupAcc>>> acc(
        eps.size(), std::vector<std::vector<SupAcc>>(cb.image.size(), std::vector<SupAcc>(kmax + 1)));
    parallel_for(eps.size(), [&](std::size_t e) {
      for (const auto& p : pts) {
        auto y = u.eval(eps[e], a, seed(p.x, kmax));
        if (!y) continue;
        for (std::size_t s = 0; s < cb.image.size(); ++s) {
          auto yb = Y.to_chart(*y, cb.image[s].chart);
          if (!yb || !cb.image[s].box.contains_closed(values(yb->x))) continue;
          for (int k = 0; k <= kmax; ++k) acc[e][s][k].add(norm_k(yb->x, k), [&] { return describe(X, p); });
        }
      }
    });
    for (std::size_t s = 0; s < cb.image.size(); ++s)
      for (int k = 0; k <= kmax; ++k) {
        SupSeries series;
        series.context = piece_label(X, K, pi) + "->" + Y.chart(cb.image[s].chart).id + " k=" + std::to_string(k);
        for (std::size_t e = 0; e < eps.size(); ++e) {
          const auto& A = acc[e][s][k];
          series.add(eps[e], A.any ? A.sup : 0.0, A.where, !A.any);
        }
        parts.push_back(judge_moderate(series, cfg));
      }
  }
  auto v = conjunction("moderate", std::move(parts), Worst::MostNegativeSlope);
  v.label = u.tag();
  return v;
}

SupSeries distance_series(const MapNet& u, const MapNet& v, const CompactRegion& K, const RiemannianMetric& h,
                          const Config& cfg) {
  K.validate(*u.src());
  const auto eps = EpsGrid(cfg.eps_grid).values();
  const auto pts = K.sample(cfg.random_extra, cfg.seed);
  const Atlas& Y = *u.dst();
  std::vector<SupAcc> acc(eps.size());
  parallel_for(eps.size(), [&](std::size_t e) {
    for (const auto& p : pts) {
      auto a = u.value(eps[e], p);
      auto b = v.value(eps[e], p);
      if (!a || !b) continue;
      double d = distance(Y, h, *a, *b);
      if (d <= cfg.noise_floor * (1.0 + std::max(max_abs(a->x), max_abs(b->x)))) d = 0.0;
      acc[e].add(d, [&] { return describe(*u.src(), p); });
    }
  });
  SupSeries s;
  s.context = "sup d(" + u.tag() + ", " + v.tag() + ")";
  for (std::size_t e = 0; e < eps.size(); ++e) s.add(eps[e], acc[e].any ? acc[e].sup : 0.0, acc[e].where, !acc[e].any);
  return s;
}

Verdict check_equiv0(const MapNet& u, const MapNet& v, const CompactRegion& K, const RiemannianMetric& h,
                     const Config& cfg) {
  const auto d = distance_series(u, v, K, h, cfg);
  auto alpha = judge_vanishing(d, cfg);
  alpha.label = "vanishing";
  auto beta = judge_negligible(d, cfg);
  beta.label = "negligible distance";
  auto metric = conjunction("equiv0-metric", {alpha, beta}, Worst::SmallestSlope);
  metric.label = "metric";

  Verdict chart;
  auto cu = check_cbounded(u, K, cfg);
  auto cv = check_cbounded(v, K, cfg);
  if (cu.verdict.pass() && cv.verdict.pass()) {
    std::vector<Verdict> parts{alpha};
    for (auto& p : chartwise_differences(u, v, K, cu.image, cv.image, 0, cfg)) parts.push_back(std::move(p));
    chart = conjunction("equiv0-chart", std::move(parts), Worst::SmallestSlope);
  } else {
    chart.check = "equiv0-chart";
    chart.status = Status::Inconclusive;
    chart.notes.push_back("c-boundedness precondition not met");
  }
  chart.label = "chart";

  Verdict out;
  out.check = "equiv0";
  out.label = u.tag() + " ~0 " + v.tag();
  out.status = metric.status;
  out.estimate = metric.estimate;
  out.witness = metric.witness;
  out.order = metric.order;
  out.notes.push_back(metric.status == chart.status ? "routes agree" : "routes disagree");
  out.parts = {metric, chart};
  return out;
}

bool routes_agree(const Verdict& v) { return v.parts.size() == 2 && v.parts[0].status == v.parts[1].status; }

Verdict check_equiv(const MapNet& u, const MapNet& v, const std::vector<CompactRegion>& Ks, const RiemannianMetric& h,
                    const Config& cfg) {
  std::vector<Verdict> parts;
  for (std::size_t i = 0; i < Ks.size(); ++i) {
    const auto& K = Ks[i];
    auto alpha = judge_vanishing(distance_series(u, v, K, h, cfg), cfg);
    alpha.label = "K" + std::to_string(i) + " vanishing";
    parts.push_back(alpha);
    auto cu = check_cbounded(u, K, cfg);
    auto cv = check_cbounded(v, K, cfg);
    if (!cu.verdict.pass() || !cv.verdict.pass()) {
      Verdict pre;
      pre.check = "c-bounded";
      pre.label = "K" + std::to_string(i) + " c-bounded";
      pre.status = cu.verdict.fail() || cv.verdict.fail() ? Status::Fail : Status::Inconclusive;
      pre.witness = cu.verdict.fail() ? cu.verdict.witness : cv.verdict.witness;
      parts.push_back(pre);
      continue;
    }
    for (auto& p : chartwise_differences(u, v, K, cu.image, cv.image, cfg.k_max, cfg)) {
      p.label = "K" + std::to_string(i) + " " + p.label;
      parts.push_back(std::move(p));
    }
  }
  auto out = conjunction("equiv", std::move(parts), Worst::SmallestSlope);
  out.label = u.tag() + " ~ " + v.tag();
  return out;
}

SingleChartReport check_single_chart(const MapNet& u, const CompactRegion& K, const Config& cfg) {
  SingleChartReport r;
  r.verdict.check = "single-chart";
  r.verdict.label = u.tag();
  auto cb = check_cbounded(u, K, cfg);
  r.eps0 = cb.eps0;
  if (!cb.verdict.pass()) {
    r.verdict.status = cb.verdict.status;
    r.verdict.witness = cb.verdict.witness;
    r.verdict.notes.push_back("c-boundedness precondition not met");
    return r;
  }
  const Atlas& Y = *u.dst();
  const auto tail = tail_images(u, K, cfg);
  double best = -kInf;
  std::string worst_where;
  for (int b = 0; b < Y.num_charts(); ++b) {
    Vec lo(Y.chart(b).dim, kInf), hi(Y.chart(b).dim, -kInf);
    bool all = true;
    for (const auto& p : tail) {
      auto q = Y.to_chart(p, b);
      if (!q) {
        all = false;
        break;
      }
      for (std::size_t i = 0; i < q->x.size(); ++i) {
        lo[i] = std::min(lo[i], q->x[i]);
        hi[i] = std::max(hi[i], q->x[i]);
      }
    }
    if (!all) continue;
    for (const auto& d : Y.chart(b).domain) {
      if (!d.contains_closed(lo) || !d.contains_closed(hi)) continue;
      const double m = std::min(d.margin(lo), d.margin(hi));
      if (m > best) {
        best = m;
        r.chart = Y.chart(b).id;
        worst_where = Y.chart(b).id + ":" + fmt_coords(lo) + ".." + fmt_coords(hi);
      }
    }
  }
  r.margin = std::max(best, 0.0);
  if (r.chart && best >= cfg.margin_min) {
    r.verdict.status = Status::Pass;
    r.verdict.notes.push_back("chart " + *r.chart);
    return r;
  }
  r.verdict.status = Status::Fail;
  r.verdict.witness = Witness{tail_eps(cfg).back(), r.chart ? worst_where : "no chart contains all images",
                              best > 0 ? std::log(best) : -kInf};
  r.verdict.notes.push_back("no single chart contains the small-eps images with margin");
  r.chart.reset();
  return r;
}

MapNet compose(const MapNet& v, const MapNet& u, const Config& cfg, const std::vector<CompactRegion>& probes) {
  if (u.dst()->name() != v.src()->name() || u.dst()->num_charts() != v.src()->num_charts())
    throw Error(ErrorCode::ChartMismatch, "compose: target of " + u.tag() + " is not the source of " + v.tag());
  auto fn = [u, v](double eps, int a, std::span<const Jet> x) -> std::optional<ChartJets> {
    auto y = u.eval(eps, a, x);
    if (!y) return std::nullopt;
    if (auto z = v.eval(eps, y->chart, y->x)) return z;
    const Atlas& Y = *u.dst();
    for (int c = 0; c < Y.num_charts(); ++c) {
      if (c == y->chart) continue;
      auto yc = Y.to_chart(*y, c);
      if (!yc) continue;
      if (auto z = v.eval(eps, c, yc->x)) return z;
    }
    throw Error(ErrorCode::ChartMismatch, "compose: no chart links " + u.tag() + " to " + v.tag() + " at " +
                                              describe(Y, Point{y->chart, values(y->x)}));
  };
  MapNet w(u.src(), v.dst(), fn, v.tag() + "o" + u.tag());
  w.provenance = u.provenance;
  for (const auto& K : probes) {
    auto cb = check_cbounded(u, K, cfg);
    if (!cb.verdict.pass()) {
      w.provenance.push_back("single-chart(" + v.tag() + "): inner net not c-bounded");
      continue;
    }
    CompactRegion R{cb.image, K.density};
    auto sc = check_single_chart(v, R, cfg);
    w.provenance.push_back("single-chart(" + v.tag() + "): " + to_string(sc.verdict.status) +
                           (sc.chart ? " chart " + *sc.chart : std::string()));
  }
  return w;
}

}  // namespace gcm
