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

#include "gcm/vbundle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "gcm/error.hpp"
#include "gcm/parallel.hpp"

namespace gcm {

namespace {

/// d^alpha of a jet that may live in a smaller (constant) layout.
double partial_of(const Jet& j, const std::vector<int>& alpha) {
  if (j.nvars() == static_cast<int>(alpha.size())) {
    int deg = 0;
    for (int v : alpha) deg += v;
    return deg > j.order() ? 0.0 : j.partial(alpha);
  }
  for (int v : alpha)
    if (v != 0) return 0.0;
  return j.value();
}

std::shared_ptr<const JetLayout> widest_layout(const std::vector<Jet>& a) {
  std::shared_ptr<const JetLayout> best;
  for (const auto& j : a)
    if (j.layout() && (!best || j.nvars() > best->nvars() || j.order() > best->order())) best = j.layout();
  return best;
}

int jet_order(std::span<const Jet> x) {
  int k = 0;
  for (const auto& j : x) k = std::max(k, j.order());
  return k;
}

/// Jacobian of T along the jets x, as a matrix of jets in x's variables.
JetMatrix jacobian_along(const LocalMap& T, std::span<const Jet> x) {
  const Vec x0 = values(x);
  const int K = jet_order(x);
  const auto fresh = seed(x0, K + 1);
  const auto y = T.apply(fresh);
  JetMatrix J(T.out_dim(), T.in_dim(), x.empty() ? Jet::constant(0.0) : x[0]);
  for (int i = 0; i < T.out_dim(); ++i)
    for (int j = 0; j < T.in_dim(); ++j) J(i, j) = compose_taylor(y[i].derivative(j), x);
  return J;
}

Jet constant_like(std::span<const Jet> x, double c) {
  if (x.empty() || !x[0].layout()) return Jet::constant(c);
  return Jet(x[0].layout(), c);
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd K(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

struct SupAcc {
  double sup = 0.0;
  std::string where;
  bool any = false;
  void add(double v, const std::string& loc) {
    if (std::isnan(v)) v = kInf;
    if (!any || v > sup) {
      sup = v;
      where = loc;
    }
    any = true;
  }
};

std::string piece_label(const Atlas& src, const CompactRegion& K, std::size_t i) {
  return "L" + std::to_string(i) + "[" + src.chart(K.pieces[i].chart).id + "]";
}

Box hull(const Box& a, const Box& b) {
  Box h = a;
  for (int i = 0; i < a.dim(); ++i) {
    h.lo[i] = std::min(a.lo[i], b.lo[i]);
    h.hi[i] = std::max(a.hi[i], b.hi[i]);
  }
  return h;
}

}  // namespace

JetMatrix JetMatrix::identity(int n, const Jet& like) {
  const Jet zero = like.layout() ? Jet(like.layout(), 0.0) : Jet::constant(0.0);
  JetMatrix m(n, n, zero);
  for (int i = 0; i < n; ++i) m(i, i) = zero + 1.0;
  return m;
}

Eigen::MatrixXd JetMatrix::value() const {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = (*this)(i, j).value();
  return m;
}

JetMatrix JetMatrix::transpose() const {
  JetMatrix t;
  t.rows = cols;
  t.cols = rows;
  t.a.resize(a.size());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double JetMatrix::norm_k(int k) const {
  if (k == 0) {
    const Eigen::MatrixXd m = value();
    if (!m.allFinite()) return kInf;
    return operator_norm(m);
  }
  auto L = widest_layout(a);
  if (!L) return 0.0;
  double best = 0.0;
  for (std::size_t i = 0; i < L->size(); ++i) {
    if (L->degree(i) != k) continue;
    const auto& alpha = L->multi_index(i);
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = partial_of((*this)(r, c), alpha);
    if (!m.allFinite()) return kInf;
    best = std::max(best, operator_norm(m));
  }
  return best;
}

JetVec JetMatrix::apply(std::span<const Jet> v) const {
  JetVec out;
  for (int i = 0; i < rows; ++i) {
    Jet s = (*this)(i, 0) * v[0];
    for (int j = 1; j < cols; ++j) s += (*this)(i, j) * v[j];
    out.push_back(s);
  }
  return out;
}

Vec JetMatrix::apply(const Vec& v) const {
  Vec out(static_cast<std::size_t>(rows), 0.0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out[i] += (*this)(i, j).value() * v[j];
  return out;
}

JetMatrix operator*(const JetMatrix& x, const JetMatrix& y) {
  if (x.cols != y.rows) throw Error(ErrorCode::InvalidArgument, "matrix dimension mismatch");
  JetMatrix m;
  m.rows = x.rows;
  m.cols = y.cols;
  m.a.reserve(static_cast<std::size_t>(m.rows * m.cols));
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < y.cols; ++j) {
      Jet s = x(i, 0) * y(0, j);
      for (int k = 1; k < x.cols; ++k) s += x(i, k) * y(k, j);
      m.a.push_back(s);
    }
  return m;
}

JetMatrix JetMatrix::kron(const JetMatrix& x, const JetMatrix& y) {
  JetMatrix m;
  m.rows = x.rows * y.rows;
  m.cols = x.cols * y.cols;
  m.a.resize(static_cast<std::size_t>(m.rows * m.cols));
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l) m(i * y.rows + k, j * y.cols + l) = x(i, j) * y(k, l);
  return m;
}

JetMatrix compose_taylor(const JetMatrix& p, std::span<const Jet> inner) {
  JetMatrix m = p;
  for (auto& e : m.a) e = compose_taylor(e, inner);
  return m;
}

double diff_norm_k(const JetMatrix& x, const JetMatrix& y, int k, double floor) {
  auto L = widest_layout(x.a);
  auto Ly = widest_layout(y.a);
  if (!L || (Ly && Ly->size() > L->size())) L = Ly;
  double best = 0.0;
  auto entry = [&](const std::vector<int>& alpha, int r, int c) {
    const double a = partial_of(x(r, c), alpha), b = partial_of(y(r, c), alpha);
    const double d = a - b;
    return std::fabs(d) <= floor * (1.0 + std::max(std::fabs(a), std::fabs(b))) ? 0.0 : d;
  };
  auto one = [&](const std::vector<int>& alpha) {
    Eigen::MatrixXd m(x.rows, x.cols);
    for (int r = 0; r < x.rows; ++r)
      for (int c = 0; c < x.cols; ++c) m(r, c) = entry(alpha, r, c);
    if (!m.allFinite()) return kInf;
    return operator_norm(m);
  };
  if (!L) return k == 0 ? one({}) : 0.0;
  for (std::size_t i = 0; i < L->size(); ++i)
    if (L->degree(i) == k) best = std::max(best, one(L->multi_index(i)));
  return best;
}

VectorBundle::VectorBundle(std::string name, Manifold base, int fiber_dim, TransitionFn phi, FiberMetricFn metric,
                           BundleKind kind, int r, int s)
    : name_(std::move(name)),
      base_(std::move(base)),
      fiber_dim_(fiber_dim),
      phi_(std::move(phi)),
      metric_(std::move(metric)),
      kind_(kind),
      r_(r),
      s_(s) {
  if (fiber_dim_ < 1) throw Error(ErrorCode::InvalidArgument, "fiber dimension must be positive");
}

std::shared_ptr<const VectorBundle> VectorBundle::trivial(const Manifold& base, int n) {
  auto phi = [n](int, int, std::span<const Jet> x) { return JetMatrix::identity(n, constant_like(x, 0.0)); };
  auto metric = [n](int, std::span<const double>) { return Eigen::MatrixXd::Identity(n, n).eval(); };
  return std::make_shared<VectorBundle>(base.atlas->name() + "xR^" + std::to_string(n), base, n, phi, metric,
                                        BundleKind::Trivial);
}

std::shared_ptr<const VectorBundle> VectorBundle::tangent(const Manifold& base) {
  auto atlas = base.atlas;
  auto phi = [atlas](int a, int b, std::span<const Jet> x) {
    if (a == b) return JetMatrix::identity(atlas->dim(), constant_like(x, 0.0));
    return jacobian_along(atlas->transition_map(a, b), x);
  };
  VectorBundle::FiberMetricFn metric;
  if (base.metric) metric = [g = base.metric](int c, std::span<const double> x) { return g->at(c, x); };
  return std::make_shared<VectorBundle>("T" + atlas->name(), base, atlas->dim(), phi, metric, BundleKind::Tangent, 1,
                                        0);
}

std::shared_ptr<const VectorBundle> VectorBundle::cotangent(const Manifold& base) {
  auto atlas = base.atlas;
  auto phi = [atlas](int a, int b, std::span<const Jet> x) {
    if (a == b) return JetMatrix::identity(atlas->dim(), constant_like(x, 0.0));
    const JetVec y = atlas->transition_map(a, b).apply(x);
    return jacobian_along(atlas->transition_map(b, a), y).transpose();
  };
  VectorBundle::FiberMetricFn metric;
  if (base.metric)
    metric = [g = base.metric](int c, std::span<const double> x) { return Eigen::MatrixXd(g->at(c, x).inverse()); };
  return std::make_shared<VectorBundle>("T*" + atlas->name(), base, atlas->dim(), phi, metric, BundleKind::Cotangent,
                                        0, 1);
}

std::shared_ptr<const VectorBundle> VectorBundle::tensor(const Manifold& base, int r, int s) {
  if (r < 0 || s < 0 || r + s > 4) throw Error(ErrorCode::TypeMismatch, "tensor type must satisfy r + s <= 4");
  auto T = tangent(base);
  auto C = cotangent(base);
  const int n = base.atlas->dim();
  auto phi = [T, C, r, s](int a, int b, std::span<const Jet> x) {
    JetMatrix m = JetMatrix::identity(1, constant_like(x, 0.0));
    if (r + s == 0) return m;
    const JetMatrix J = T->transition(a, b, x);
    const JetMatrix Jc = C->transition(a, b, x);
    for (int i = 0; i < r; ++i) m = JetMatrix::kron(m, J);
    for (int i = 0; i < s; ++i) m = JetMatrix::kron(m, Jc);
    return m;
  };
  VectorBundle::FiberMetricFn metric;
  if (base.metric)
    metric = [g = base.metric, r, s](int c, std::span<const double> x) {
      const Eigen::MatrixXd G = g->at(c, x);
      const Eigen::MatrixXd Gi = G.inverse();
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(1, 1);
      for (int i = 0; i < r; ++i) m = kron(m, G);
      for (int i = 0; i < s; ++i) m = kron(m, Gi);
      return m;
    };
  return std::make_shared<VectorBundle>("T(" + std::to_string(r) + "," + std::to_string(s) + ")" + base.atlas->name(),
                                        base, ipow(n, r + s), phi, metric, BundleKind::Tensor, r, s);
}

JetMatrix VectorBundle::transition(int a, int b, std::span<const Jet> x) const {
  if (a != b && !base_.atlas->has_transition(a, b))
    throw Error(ErrorCode::NoOverlap, name_ + ": no vb-transition between charts");
  return phi_(a, b, x);
}

Eigen::MatrixXd VectorBundle::transition(int a, int b, std::span<const double> x) const {
  return transition(a, b, seed(x, 0)).value();
}

Eigen::MatrixXd VectorBundle::fiber_metric(int chart, std::span<const double> x) const {
  if (!metric_) throw Error(ErrorCode::MissingFiberMetric, name_ + " has no fiber metric");
  return metric_(chart, x);
}

double VectorBundle::cocycle_error(int samples) const {
  const Atlas& A = *base_.atlas;
  std::mt19937_64 rng(1);
  double worst = 0.0;
  const int n = fiber_dim_;
  for (int a = 0; a < A.num_charts(); ++a) {
    for (int t = 0; t < samples; ++t) {
      const auto& dom = A.chart(a).domain[static_cast<std::size_t>(t) % A.chart(a).domain.size()];
      Vec x(static_cast<std::size_t>(A.dim()));
      for (int i = 0; i < A.dim(); ++i) {
        const double lo = std::max(dom.lo[i], -3.0), hi = std::min(dom.hi[i], 3.0);
        x[i] = std::uniform_real_distribution<double>(lo, hi)(rng);
      }
      if (!A.chart(a).contains(x)) continue;
      for (int b = 0; b < A.num_charts(); ++b) {
        auto y = A.to_chart(Point{a, x}, b);
        if (!y || b == a) continue;
        const Eigen::MatrixXd pab = transition(a, b, x);
        const Eigen::MatrixXd pba = transition(b, a, y->x);
        worst = std::max(worst, (pba * pab - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
        for (int c = 0; c < A.num_charts(); ++c) {
          auto z = A.to_chart(Point{a, x}, c);
          if (!z || c == a || c == b || !A.to_chart(*y, c)) continue;
          const Eigen::MatrixXd lhs = transition(b, c, y->x) * pab;
          worst = std::max(worst, (lhs - transition(a, c, x)).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  return worst;
}

std::optional<BundlePoint> to_vb_chart(const VectorBundle& E, const BundlePoint& e, int b) {
  auto q = E.atlas()->to_chart(e.base, b);
  if (!q) return std::nullopt;
  if (b == e.base.chart) return e;
  const Eigen::MatrixXd phi = E.transition(e.base.chart, b, e.base.x);
  const Eigen::VectorXd xi = phi * Eigen::Map<const Eigen::VectorXd>(e.fiber.data(), static_cast<int>(e.fiber.size()));
  return BundlePoint{*q, Vec(xi.data(), xi.data() + xi.size())};
}

double fiber_norm(const VectorBundle& E, const BundlePoint& e, bool strict) {
  const Eigen::Map<const Eigen::VectorXd> xi(e.fiber.data(), static_cast<int>(e.fiber.size()));
  if (!E.has_fiber_metric()) {
    if (strict) throw Error(ErrorCode::MissingFiberMetric, E.name() + " has no fiber metric");
    return xi.norm();
  }
  const Eigen::MatrixXd G = E.fiber_metric(e.base.chart, e.base.x);
  return std::sqrt(std::max(0.0, xi.dot(G * xi)));
}

VBHomNet::VBHomNet(BundlePtr src, BundlePtr dst, Fn fn, std::string tag)
    : src_(std::move(src)), dst_(std::move(dst)), fn_(std::move(fn)), tag_(std::move(tag)) {
  auto f = fn_;
  base_ = MapNet(
      src_->atlas(), dst_->atlas(),
      [f](double e, int a, std::span<const Jet> x) -> std::optional<ChartJets> {
        auto r = f(e, a, x);
        if (!r) return std::nullopt;
        return r->base;
      },
      "base(" + tag_ + ")");
}

std::optional<VBHomValue> VBHomNet::eval(double eps, int a, std::span<const Jet> x) const { return fn_(eps, a, x); }

std::optional<VBHomValue> VBHomNet::local(double eps, int a, int b, std::span<const Jet> x) const {
  auto r = fn_(eps, a, x);
  if (!r) return std::nullopt;
  if (r->base.chart == b) return r;
  auto yb = dst_->atlas()->to_chart(r->base, b);
  if (!yb) return std::nullopt;
  return VBHomValue{*yb, dst_->transition(r->base.chart, b, r->base.x) * r->matrix};
}

std::optional<BundlePoint> VBHomNet::apply(double eps, const BundlePoint& e) const {
  auto r = fn_(eps, e.base.chart, seed(e.base.x, 0));
  if (!r) return std::nullopt;
  return BundlePoint{Point{r->base.chart, values(r->base.x)}, r->matrix.apply(e.fiber)};
}

VBHomNet tangent(const MapNet& u, BundlePtr TX, BundlePtr TY) {
  if (TX->atlas()->name() != u.src()->name() || TY->atlas()->name() != u.dst()->name())
    throw Error(ErrorCode::ChartMismatch, "tangent: bundles do not sit over the net's manifolds");
  auto fn = [u](double eps, int a, std::span<const Jet> x) -> std::optional<VBHomValue> {
    const int K = jet_order(x);
    auto y = u.eval(eps, a, seed(values(x), K + 1));
    if (!y) return std::nullopt;
    const int m = static_cast<int>(y->x.size()), n = static_cast<int>(x.size());
    JetMatrix J(m, n, x[0]);
    JetVec base;
    for (int i = 0; i < m; ++i) {
      base.push_back(compose_taylor(y->x[i].truncated(K), x));
      for (int j = 0; j < n; ++j) J(i, j) = compose_taylor(y->x[i].derivative(j), x);
    }
    return VBHomValue{ChartJets{y->chart, base}, J};
  };
  return VBHomNet(std::move(TX), std::move(TY), fn, "T" + u.tag());
}

Verdict check_vbhom_moderate(const VBHomNet& u, const CompactRegion& L, const Config& cfg) {
  auto base = check_moderate(u.base_net(), L, cfg);
  base.label = "base";
  if (!base.pass()) {
    auto v = conjunction("vbhom-moderate", {base}, Worst::MostNegativeSlope);
    v.label = u.tag();
    return v;
  }
  const auto cb = check_cbounded(u.base_net(), L, cfg);
  const auto eps = EpsGrid(cfg.eps_grid).values();
  const Atlas& X = *u.src()->atlas();
  const int kmax = cfg.k_max;
  std::vector<Verdict> parts{base};
  for (std::size_t pi = 0; pi < L.pieces.size(); ++pi) {
    const int a = L.pieces[pi].chart;
    const auto pts = L.lattice_of(pi);
    std::vector<std::vector<std::vector<SupAcc>>> acc(
        eps.size(), std::vector<std::vector<SupAcc>>(cb.image.size(), std::vector<SupAcc>(kmax + 1)));
    parallel_for(eps.size(), [&](std::size_t e) {
      for (const auto& p : pts) {
        const auto jets = seed(p.x, kmax);
        for (std::size_t s = 0; s < cb.image.size(); ++s) {
          auto r = u.local(eps[e], a, cb.image[s].chart, jets);
          if (!r || !cb.image[s].box.contains_closed(values(r->base.x))) continue;
          const std::string where = describe(X, p);
          for (int k = 0; k <= kmax; ++k) acc[e][s][k].add(r->matrix.norm_k(k), where);
        }
      }
    });
    for (std::size_t s = 0; s < cb.image.size(); ++s)
      for (int k = 0; k <= kmax; ++k) {
        SupSeries series;
        series.context = "matrix " + piece_label(X, L, pi) + "->" + u.dst()->atlas()->chart(cb.image[s].chart).id +
                         " k=" + std::to_string(k);
        for (std::size_t e = 0; e < eps.size(); ++e) {
          const auto& A = acc[e][s][k];
          series.add(eps[e], A.any ? A.sup : 0.0, A.where, !A.any);
        }
        parts.push_back(judge_moderate(series, cfg));
      }
  }
  auto v = conjunction("vbhom-moderate", std::move(parts), Worst::MostNegativeSlope);
  v.label = u.tag();
  return v;
}

Verdict check_vbhom_equiv(const VBHomNet& u, const VBHomNet& v, const CompactRegion& L, const RiemannianMetric& h,
                          const Config& cfg, bool order0) {
  Verdict base = order0 ? check_equiv0(u.base_net(), v.base_net(), L, h, cfg)
                        : check_equiv(u.base_net(), v.base_net(), {L}, h, cfg);
  base.label = "base";
  std::vector<Verdict> parts{base};
  const auto cu = check_cbounded(u.base_net(), L, cfg);
  const auto cv = check_cbounded(v.base_net(), L, cfg);
  if (cu.verdict.pass() && cv.verdict.pass()) {
    std::map<int, Box> Lp;
    for (const auto* list : {&cu.image, &cv.image})
      for (const auto& p : *list) {
        auto it = Lp.find(p.chart);
        if (it == Lp.end())
          Lp.emplace(p.chart, p.box);
        else
          it->second = hull(it->second, p.box);
      }
    const auto eps = EpsGrid(cfg.eps_grid).values();
    const Atlas& X = *u.src()->atlas();
    const int kmax = order0 ? 0 : cfg.k_max;
    for (std::size_t pi = 0; pi < L.pieces.size(); ++pi) {
      const int a = L.pieces[pi].chart;
      const auto pts = L.lattice_of(pi);
      std::vector<std::vector<std::vector<SupAcc>>> acc(
          eps.size(), std::vector<std::vector<SupAcc>>(Lp.size(), std::vector<SupAcc>(kmax + 1)));
      parallel_for(eps.size(), [&](std::size_t e) {
        for (const auto& p : pts) {
          const auto jets = seed(p.x, kmax);
          std::size_t s = 0;
          for (const auto& [b, box] : Lp) {
            auto ru = u.local(eps[e], a, b, jets);
            auto rv = v.local(eps[e], a, b, jets);
            if (ru && rv && box.contains_closed(values(ru->base.x)) && box.contains_closed(values(rv->base.x))) {
              const std::string where = describe(X, p);
              for (int k = 0; k <= kmax; ++k)
                acc[e][s][k].add(diff_norm_k(ru->matrix, rv->matrix, k, cfg.noise_floor), where);
            }
            ++s;
          }
        }
      });
      std::size_t s = 0;
      for (const auto& entry : Lp) {
        for (int k = 0; k <= kmax; ++k) {
          SupSeries series;
          series.context = "matrix diff " + piece_label(X, L, pi) + "->" + u.dst()->atlas()->chart(entry.first).id +
                           " k=" + std::to_string(k);
          for (std::size_t e = 0; e < eps.size(); ++e) {
            const auto& A = acc[e][s][k];
            series.add(eps[e], A.any ? A.sup : 0.0, A.where, !A.any);
          }
          parts.push_back(judge_negligible(series, cfg));
        }
        ++s;
      }
    }
  } else {
    Verdict pre;
    pre.check = "c-bounded";
    pre.label = "c-bounded";
    pre.status = cu.verdict.fail() || cv.verdict.fail() ? Status::Fail : Status::Inconclusive;
    pre.witness = cu.verdict.fail() ? cu.verdict.witness : cv.verdict.witness;
    parts.push_back(pre);
  }
  auto out = conjunction(order0 ? "vbhom-equiv0" : "vbhom-equiv", std::move(parts), Worst::SmallestSlope);
  out.label = u.tag() + " ~ " + v.tag();
  return out;
}

SupSeries tangent_norm_series(const MapNet& u, const CompactRegion& K, const RiemannianMetric& g,
                              const RiemannianMetric& h, const Config& cfg) {
  const auto eps = EpsGrid(cfg.eps_grid).values();
  const auto pts = K.lattice();
  std::vector<SupAcc> acc(eps.size());
  parallel_for(eps.size(), [&](std::size_t e) {
    for (const auto& p : pts) {
      auto y = u.eval(eps[e], p.chart, seed(p.x, 1));
      if (!y) continue;
      const int m = static_cast<int>(y->x.size()), n = static_cast<int>(p.x.size());
      Eigen::MatrixXd J(m, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
          std::vector<int> alpha(static_cast<std::size_t>(n), 0);
          alpha[j] = 1;
          J(i, j) = y->x[i].partial(alpha);
        }
      const Eigen::MatrixXd G = g.at(p.chart, p.x);
      const Eigen::MatrixXd H = h.at(y->chart, values(y->x));
      Eigen::LLT<Eigen::MatrixXd> llt(G);
      const Eigen::MatrixXd Li = llt.matrixL().solve(Eigen::MatrixXd::Identity(n, n));
      const Eigen::MatrixXd B = Li * (J.transpose() * H * J) * Li.transpose();
      if (!B.allFinite()) {
        acc[e].add(kInf, describe(*u.src(), p));
        continue;
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
      acc[e].add(std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff())), describe(*u.src(), p));
    }
  });
  SupSeries s;
  s.context = "sup |T" + u.tag() + "|";
  for (std::size_t e = 0; e < eps.size(); ++e) s.add(eps[e], acc[e].any ? acc[e].sup : 0.0, acc[e].where, !acc[e].any);
  return s;
}

VBPoint VBPoint::from_net(BundlePtr bundle, std::function<BundlePoint(double)> at, const Config& cfg, std::string tag) {
  std::vector<Point> bases;
  for (double e : EpsGrid(cfg.eps_grid).values()) bases.push_back(at(e).base);
  CompactRegion support{image_boxes(*bundle->atlas(), bases, cfg.pad_fraction), cfg.lattice_density};
  return VBPoint{std::move(bundle), std::move(at), std::move(support), std::move(tag), std::nullopt};
}

VBPoint VBPoint::zero_over(BundlePtr bundle, const GenPoint& p, std::string tag) {
  const int n = bundle->fiber_dim();
  auto at = [pa = p.at, n](double e) { return BundlePoint{pa(e), Vec(static_cast<std::size_t>(n), 0.0)}; };
  return VBPoint{std::move(bundle), at, p.support, std::move(tag), std::nullopt};
}

GenPoint VBPoint::base() const {
  return GenPoint{bundle->atlas(), [a = at](double e) { return a(e).base; }, support, 1.0, "base(" + tag + ")"};
}

SupSeries VBPoint::norm_series(const Config& cfg) const {
  SupSeries s;
  s.context = "|" + tag + "|";
  for (double e : EpsGrid(cfg.eps_grid).values()) {
    const auto p = at(e);
    s.add(e, fiber_norm(*bundle, p), describe(*bundle->atlas(), p.base));
  }
  return s;
}

Verdict VBPoint::check_growth(const Config& cfg) {
  auto v = judge_moderate(norm_series(cfg), cfg);
  growth = v.estimate;
  return v;
}

Verdict vbpoints_equal(const VBPoint& e, const VBPoint& f, const RiemannianMetric& g, const Config& cfg) {
  if (e.bundle->name() != f.bundle->name()) throw Error(ErrorCode::TypeMismatch, "vb-points live in different bundles");
  auto base = points_equal(e.base(), f.base(), g, cfg);
  base.label = "base";
  SupSeries s;
  s.context = "fiber |" + e.tag + " - " + f.tag + "|";
  const VectorBundle& E = *e.bundle;
  for (double eps : EpsGrid(cfg.eps_grid).values()) {
    const auto a = e.at(eps), b = f.at(eps);
    std::optional<BundlePoint> x = a, y = to_vb_chart(E, b, a.base.chart);
    if (!y) {
      y = b;
      x = to_vb_chart(E, a, b.base.chart);
    }
    if (!x) {
      s.add_log(eps, kInf, "no shared vb-chart");
      continue;
    }
    double d = 0.0;
    for (std::size_t i = 0; i < x->fiber.size(); ++i) {
      const double u = x->fiber[i], v = y->fiber[i];
      const double di = std::fabs(u - v);
      if (di > cfg.noise_floor * (1.0 + std::max(std::fabs(u), std::fabs(v)))) d = std::max(d, di);
    }
    s.add(eps, d, describe(*E.atlas(), x->base));
  }
  auto fiber = judge_negligible(s, cfg);
  fiber.label = "fiber";
  auto out = conjunction("vbpoints-equal", {base, fiber}, Worst::SmallestSlope);
  out.label = e.tag + " = " + f.tag;
  return out;
}

VBPoint align_representative(const VBPoint& e, const GenPoint& p, const RiemannianMetric& g, const Config& cfg) {
  auto pre = points_equal(e.base(), p, g, cfg);
  if (pre.fail()) throw Error(ErrorCode::BaseMismatch, "align: base of " + e.tag + " is not " + p.tag);
  const double eps0 = EpsGrid(cfg.eps_grid).midpoint() * (1.0 + 1e-12);
  auto E = e.bundle;
  auto at = [E, ea = e.at, pa = p.at, eps0, tag = e.tag](double eps) {
    const BundlePoint x = ea(eps);
    const Point q = pa(eps);
    const Atlas& A = *E->atlas();
    for (int off = 0; off < A.num_charts(); ++off) {
      const int i = (q.chart + off) % A.num_charts();
      auto qi = A.to_chart(q, i);
      if (!qi) continue;
      auto xi = to_vb_chart(*E, x, i);
      if (!xi) continue;
      return BundlePoint{*qi, xi->fiber};
    }
    if (eps <= eps0) throw Error(ErrorCode::NoSharedChart, "align: " + tag + " and its new base share no vb-chart");
    return x;
  };
  for (double eps : tail_eps(cfg)) at(eps);
  return VBPoint{e.bundle, at, p.support, e.tag + "@" + p.tag, e.growth};
}

VBPoint fiber_combine(const VBPoint& e, const VBPoint& e2, const GenNumber& r, const Config& cfg) {
  if (e.bundle->name() != e2.bundle->name()) throw Error(ErrorCode::TypeMismatch, "vb-points live in different bundles");
  const double eps0 = EpsGrid(cfg.eps_grid).midpoint() * (1.0 + 1e-12);
  auto E = e.bundle;
  auto at = [E, a1 = e.at, a2 = e2.at, r, eps0](double eps) {
    const BundlePoint x = a1(eps);
    auto y = to_vb_chart(*E, a2(eps), x.base.chart);
    bool same = static_cast<bool>(y);
    if (same)
      for (std::size_t i = 0; i < x.base.x.size(); ++i)
        same = same && std::fabs(y->base.x[i] - x.base.x[i]) <= 1e-9 * (1.0 + std::fabs(x.base.x[i]));
    if (!same) {
      if (eps <= eps0) throw Error(ErrorCode::BaseMismatch, "fiber_combine: bases differ; align the representatives first");
      return x;
    }
    BundlePoint out = x;
    const double c = r.at(eps);
    for (std::size_t i = 0; i < out.fiber.size(); ++i) out.fiber[i] += c * y->fiber[i];
    return out;
  };
  for (double eps : tail_eps(cfg)) at(eps);
  return VBPoint{e.bundle, at, e.support, e.tag + "+" + r.tag() + "*" + e2.tag, std::nullopt};
}

SectionNet::SectionNet(BundlePtr bundle, Fn fn, std::string tag)
    : bundle_(std::move(bundle)), fn_(std::move(fn)), tag_(std::move(tag)) {}

SectionNet SectionNet::from_chart(BundlePtr bundle, int home, Fn fn, std::string tag) {
  auto E = bundle;
  auto f = [E, home, fn](double eps, int a, std::span<const Jet> x) {
    if (a == home) return fn(eps, a, x);
    const JetVec xh = E->atlas()->transition(a, home, x);
    const JetVec c = fn(eps, home, xh);
    return E->transition(home, a, xh).apply(c);
  };
  return SectionNet(std::move(bundle), f, std::move(tag));
}

Vec SectionNet::value(double eps, const Point& p) const { return values(fn_(eps, p.chart, seed(p.x, 0))); }

Verdict check_section_moderate(const SectionNet& s, const CompactRegion& K, const Config& cfg) {
  const auto eps = EpsGrid(cfg.eps_grid).values();
  const Atlas& X = *s.bundle()->atlas();
  const int kmax = cfg.k_max;
  std::vector<Verdict> parts;
  for (std::size_t pi = 0; pi < K.pieces.size(); ++pi) {
    const int a = K.pieces[pi].chart;
    const auto pts = K.lattice_of(pi);
    std::vector<std::vector<SupAcc>> acc(eps.size(), std::vector<SupAcc>(kmax + 1));
    parallel_for(eps.size(), [&](std::size_t e) {
      for (const auto& p : pts) {
        const JetVec c = s.eval(eps[e], a, seed(p.x, kmax));
        const std::string where = describe(X, p);
        for (int k = 0; k <= kmax; ++k) {
          double m = 0;
          for (const auto& j : c) m = std::max(m, j.max_partial(k));
          acc[e][k].add(m, where);
        }
      }
    });
    for (int k = 0; k <= kmax; ++k) {
      SupSeries series;
      series.context = s.tag() + " " + piece_label(X, K, pi) + " k=" + std::to_string(k);
      for (std::size_t e = 0; e < eps.size(); ++e) series.add(eps[e], acc[e][k].sup, acc[e][k].where, !acc[e][k].any);
      parts.push_back(judge_moderate(series, cfg));
    }
  }
  auto v = conjunction("section-moderate", std::move(parts), Worst::MostNegativeSlope);
  v.label = s.tag();
  return v;
}

VBPoint section_eval(const SectionNet& s, const GenPoint& p, const Config&) {
  auto at = [s, pa = p.at](double eps) {
    const Point q = pa(eps);
    return BundlePoint{q, s.value(eps, q)};
  };
  return VBPoint{s.bundle(), at, p.support, s.tag() + "(" + p.tag + ")", std::nullopt};
}

VBPoint vbhom_eval(const VBHomNet& v, const VBPoint& e, const Config& cfg) {
  auto sc = check_single_chart(v.base_net(), e.support, cfg);
  if (!sc.verdict.pass())
    throw Error(ErrorCode::SingleChartMissing, v.tag() + " does not map the support of " + e.tag + " into one chart");
  auto at = [v, ea = e.at](double eps) {
    auto r = v.apply(eps, ea(eps));
    if (!r) throw Error(ErrorCode::SupportEscape, v.tag() + " is undefined on the vb-point");
    return *r;
  };
  auto out = VBPoint::from_net(v.dst(), at, cfg, v.tag() + "(" + e.tag + ")");
  out.check_growth(cfg);
  return out;
}

std::optional<SectionWitness> section_zero_witness(const SectionNet& s, const CompactRegion& K,
                                                   const RiemannianMetric& g, const Config& cfg, int trials) {
  K.validate(*s.bundle()->atlas());
  const auto eps = EpsGrid(cfg.eps_grid).values();
  const auto pts = K.sample(static_cast<std::size_t>(std::max(0, trials)), cfg.seed);
  const VectorBundle& E = *s.bundle();
  std::vector<double> sup(eps.size(), -1.0);
  std::vector<Point> argmax(eps.size(), pts.front());
  parallel_for(eps.size(), [&](std::size_t k) {
    for (const auto& p : pts) {
      double n = fiber_norm(E, BundlePoint{p, s.value(eps[k], p)});
      if (n <= cfg.noise_floor) n = 0.0;
      if (n > sup[k]) {
        sup[k] = n;
        argmax[k] = p;
      }
    }
  });
  SupSeries series;
  series.context = "sup |" + s.tag() + "|";
  for (std::size_t k = 0; k < eps.size(); ++k) series.add(eps[k], sup[k], describe(*E.atlas(), argmax[k]));
  auto neg = judge_negligible(series, cfg);
  if (neg.pass()) return std::nullopt;
  auto at = [eps, argmax](double e) { return argmax[grid_slot(eps, e)]; };
  auto w = GenPoint::from_net(s.bundle()->atlas(), at, cfg, "argmax|" + s.tag() + "|");
  auto ev = vbpoints_equal(section_eval(s, w, cfg), VBPoint::zero_over(s.bundle(), w, "0"), g, cfg);
  return SectionWitness{std::move(w), std::move(ev), std::move(neg)};
}

GenNumber tensor_insert(const SectionNet& t, const std::vector<SectionNet>& omegas, const std::vector<SectionNet>& xis,
                        const GenPoint& p) {
  const VectorBundle& T = *t.bundle();
  if (T.kind() == BundleKind::Trivial) throw Error(ErrorCode::TypeMismatch, "tensor_insert needs a tensor section");
  const int r = T.r(), s = T.s();
  if (r + s > 4) throw Error(ErrorCode::TypeMismatch, "tensor type exceeds r + s <= 4");
  if (static_cast<int>(omegas.size()) != r || static_cast<int>(xis.size()) != s)
    throw Error(ErrorCode::TypeMismatch, "tensor of type (" + std::to_string(r) + "," + std::to_string(s) + ") got " +
                                             std::to_string(omegas.size()) + " one-forms and " +
                                             std::to_string(xis.size()) + " vector fields");
  for (const auto& w : omegas)
    if (w.bundle()->kind() != BundleKind::Cotangent && !(w.bundle()->r() == 0 && w.bundle()->s() == 1))
      throw Error(ErrorCode::TypeMismatch, w.tag() + " is not a one-form");
  for (const auto& x : xis)
    if (x.bundle()->kind() != BundleKind::Tangent && !(x.bundle()->r() == 1 && x.bundle()->s() == 0))
      throw Error(ErrorCode::TypeMismatch, x.tag() + " is not a vector field");
  const int n = T.atlas()->dim();
  auto fn = [t, omegas, xis, pa = p.at, n, r, s](double eps) {
    const Point q = pa(eps);
    const Vec coeff = t.value(eps, q);
    std::vector<Vec> args;
    for (const auto& w : omegas) args.push_back(w.value(eps, q));
    for (const auto& x : xis) args.push_back(x.value(eps, q));
    double sum = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(r + s), 0);
    for (std::size_t flat = 0; flat < coeff.size(); ++flat) {
      std::size_t rem = flat;
      for (int slot = r + s - 1; slot >= 0; --slot) {
        idx[slot] = static_cast<int>(rem % n);
        rem /= n;
      }
      double term = coeff[flat];
      for (int slot = 0; slot < r + s; ++slot) term *= args[slot][idx[slot]];
      sum += term;
    }
    return sum;
  };
  std::string tag = t.tag() + "(";
  for (const auto& w : omegas) tag += w.tag() + ",";
  for (const auto& x : xis) tag += x.tag() + ",";
  if (tag.back() == ',') tag.pop_back();
  return GenNumber(fn, tag + ")(" + p.tag + ")");
}

}  // namespace gcm
