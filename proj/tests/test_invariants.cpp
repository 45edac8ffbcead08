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

#include "doctest.h"
#include "gallery.hpp"
#include "gcm/error.hpp"

using namespace gcm;

namespace {

/// R with the identity chart "x" and the redundant chart "y" = 2x + 1.
Manifold redundant_line() {
  Chart x{"x", 1, {Box{{-kInf}, {kInf}}}, "identity", 0};
  Chart y{"y", 1, {Box{{-kInf}, {kInf}}}, "2x+1", 0};
  auto atlas = std::make_shared<Atlas>("euclidean", std::vector<Chart>{x, y});
  atlas->add_transition(0, 1, LocalMap::exact(1, 1, [](std::span<const Jet> t) { return JetVec{2.0 * t[0] + 1.0}; }));
  atlas->add_transition(1, 0, LocalMap::exact(1, 1, [](std::span<const Jet> t) { return JetVec{(t[0] - 1.0) / 2.0}; }));
  auto to_x = [](const Point& p) { return p.chart == 0 ? p.x[0] : (p.x[0] - 1.0) / 2.0; };
  auto metric = std::make_shared<RiemannianMetric>(
      atlas, [](int c, std::span<const double>) { return Eigen::MatrixXd::Constant(1, 1, c == 0 ? 1.0 : 0.25); },
      [to_x](const Point& p, const Point& q) { return std::fabs(to_x(p) - to_x(q)); });
  return {atlas, metric};
}

/// Real net f on R with redundant source and/or target atlas; targets are
/// reported in chart "y" when to_y is set.
MapNet redundant_net(const Manifold& X, const Manifold& Y, std::function<Jet(double, const Jet&)> f, bool to_y) {
  const bool src_redundant = X.atlas->num_charts() == 2;
  return MapNet(X.atlas, Y.atlas,
                [=](double e, int a, std::span<const Jet> x) -> std::optional<ChartJets> {
                  const Jet t = src_redundant && a == 1 ? (x[0] - 1.0) / 2.0 : x[0];
                  const Jet v = f(e, t);
                  if (to_y) return ChartJets{1, {2.0 * v + 1.0}};
                  return ChartJets{0, {v}};
                },
                "redundant");
}

/// c-boundedness plus chart-wise moderateness in the identity chart of R^n.
Status identity_chart_route(const NamedNet& n, const Config& cfg) {
  std::vector<Verdict> parts{check_cbounded(n.net, n.K, cfg).verdict};
  if (parts[0].pass())
    for (int k = 0; k <= cfg.k_max; ++k) parts.push_back(judge_moderate(local_sup_series(n.net, n.K, 0, 0, k, cfg), cfg));
  return conjunction("identity-route", parts, Worst::MostNegativeSlope).status;
}

}  // namespace

TEST_CASE("full-atlas and identity-chart routes agree on Euclidean gallery nets") {
  Config cfg;
  int seen = 0;
  for (const auto& n : gallery_nets(cfg)) {
    if (n.src.atlas->name() != "euclidean" || n.dst.atlas->name() != "euclidean") continue;
    ++seen;
    INFO(n.name);
    CHECK(check_moderate(n.net, n.K, cfg).status == identity_chart_route(n, cfg));
  }
  CHECK(seen == 4);
}

TEST_CASE("a redundant chart never flips Pass to Fail") {
  Config cfg;
  const auto R = builtin::euclidean(1);
  const auto Rr = redundant_line();
  for (const auto& n : gallery_nets(cfg)) {
    if (n.src.atlas->name() != "euclidean" || n.dst.atlas->name() != "euclidean") continue;
    if (!check_moderate(n.net, n.K, cfg).pass()) continue;
    INFO(n.name);
    std::function<Jet(double, const Jet&)> f = [net = n.net](double e, const Jet& x) {
      return net.eval(e, 0, std::span<const Jet>(&x, 1))->x[0];
    };
    auto K2 = n.K;
    const auto& b = n.K.pieces[0].box;
    K2.pieces.push_back({1, Box{{2 * b.lo[0] + 1}, {2 * b.hi[0] + 1}}});
    CHECK_FALSE(check_moderate(redundant_net(Rr, R, f, false), K2, cfg).fail());
    CHECK_FALSE(check_moderate(redundant_net(R, Rr, f, false), n.K, cfg).fail());
    CHECK_FALSE(check_moderate(redundant_net(R, Rr, f, true), n.K, cfg).fail());
    CHECK_FALSE(check_moderate(redundant_net(Rr, Rr, f, true), K2, cfg).fail());
  }
}

TEST_CASE("equivalence corpus: ~ implies ~0, routes agree, separation matches ~0") {
  Config cfg;
  for (const auto& p : equivalence_corpus(cfg)) {
    INFO(p.name);
    const auto& h = *p.dst.metric;
    auto v0 = check_equiv0(p.u, p.v, p.K, h, cfg);
    auto v = check_equiv(p.u, p.v, {p.K}, h, cfg);
    CHECK(v0.pass() == p.equivalent);
    CHECK(routes_agree(v0));
    if (v.pass()) CHECK(v0.pass());
    if (v0.pass() && check_single_chart(p.u, p.K, cfg).verdict.pass()) CHECK(v.pass());
    auto sep = separate_by_points(p.u, p.v, p.K, h, cfg);
    CHECK(sep.has_value() == !v0.pass());
  }
}

TEST_CASE("sigma is injective: distinct smooth maps are not ~0") {
  Config cfg;
  const auto R = builtin::euclidean(1);
  auto net = [&](std::function<Jet(const Jet&)> f, std::string tag) {
    return MapNet(R.atlas, R.atlas,
                  [f](double, int, std::span<const Jet> x) -> std::optional<ChartJets> { return ChartJets{0, {f(x[0])}}; },
                  std::move(tag));
  };
  const CompactRegion K{{{0, Box{{0.0}, {1.0}}}}, cfg.lattice_density};
  CHECK(check_equiv0(net([](const Jet& x) { return sin(x); }, "sin"), net([](const Jet& x) { return cos(x); }, "cos"),
                     K, *R.metric, cfg)
            .fail());
  CHECK(check_equiv0(net([](const Jet& x) { return exp(x); }, "exp"), net([](const Jet& x) { return 1.0 + x; }, "1+x"),
                     K, *R.metric, cfg)
            .fail());
}

TEST_CASE("vb-homomorphism images sit over the base map images") {
  Config cfg;
  for (const auto& in : vbpoint_instances(cfg, 8, 3)) {
    INFO(in.name);
    auto img = vbhom_eval(in.hom, in.e, cfg);
    for (double e : EpsGrid(cfg.eps_grid).values()) {
      const Point over = img.at(e).base;
      const auto under = in.hom.base_net().value(e, in.e.at(e).base);
      REQUIRE(under);
      auto same = in.bundle->atlas()->to_chart(*under, over.chart);
      REQUIRE(same);
      for (std::size_t i = 0; i < over.x.size(); ++i) CHECK(over.x[i] == doctest::Approx(same->x[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("negligible changes of representatives never flip a Pass") {
  Config cfg;
  const auto R = builtin::euclidean(1);
  auto TR = VectorBundle::tangent(R);
  auto p = GenPoint::from_net(R.atlas, [](double e) { return Point{0, {0.2 + e}}; }, cfg, "p");
  auto q = GenPoint::from_net(R.atlas, [](double e) { return Point{0, {0.2 + e + std::exp(-1 / e)}}; }, cfg, "q");
  auto s = SectionNet::from_chart(TR, 0, [](double e, int, std::span<const Jet> x) { return JetVec{cos(x[0]) / e}; },
                                  "cos/eps");
  auto sp = section_eval(s, p, cfg), sq = section_eval(s, q, cfg);
  CHECK(vbpoints_equal(sp, sq, *R.metric, cfg).pass());
  CHECK(sp.check_growth(cfg).pass() == sq.check_growth(cfg).pass());

  auto Tsin = tangent(MapNet(R.atlas, R.atlas,
                             [](double, int, std::span<const Jet> x) -> std::optional<ChartJets> {
                               return ChartJets{0, {sin(x[0])}};
                             },
                             "sin"),
                      TR, TR);
  CHECK(vbpoints_equal(vbhom_eval(Tsin, sp, cfg), vbhom_eval(Tsin, sq, cfg), *R.metric, cfg).pass());
  auto sq_aligned = align_representative(sq, sp.base(), *R.metric, cfg);
  GenNumber r([](double e) { return 2.0 + e; }, "2+eps");
  CHECK(vbpoints_equal(fiber_combine(sp, sp, r, cfg), fiber_combine(sp, sq_aligned, r, cfg), *R.metric, cfg).pass());

  for (const auto& t : tensor_corpus(cfg)) {
    if (!t.agree) continue;
    INFO(t.name);
    auto a = tensor_insert(t.t, t.omegas, t.xis, t.p);
    const auto at = t.p.at;
    GenPoint shifted = t.p;
    shifted.at = [at](double e) {
      Point x = at(e);
      for (double& c : x.x) c += std::exp(-1 / e);
      return x;
    };
    CHECK(numbers_equal(a, tensor_insert(t.t, t.omegas, t.xis, shifted), cfg).pass());
  }
}

TEST_CASE("points_equal routes agree on the gallery points") {
  Config cfg;
  const auto S1 = builtin::circle();
  const auto S2 = builtin::sphere();
  auto pt = [&](const Manifold& M, int chart, std::function<Vec(double)> f) {
    return GenPoint::from_net(M.atlas, [chart, f](double e) { return Point{chart, f(e)}; }, cfg, "p");
  };
  std::vector<std::tuple<Manifold, GenPoint, GenPoint>> cases = {
      {S1, pt(S1, 0, [](double e) { return Vec{3.0 - e * e}; }), pt(S1, 1, [](double) { return Vec{3.0}; })},
      {S1, pt(S1, 0, [](double e) { return Vec{0.5 + std::exp(-1 / e)}; }), pt(S1, 0, [](double) { return Vec{0.5}; })},
      {S2, pt(S2, 0, [](double e) { return Vec{0.3, e}; }), pt(S2, 1, [](double) { return Vec{0.3 / 0.09, 0.0}; })},
      {S2, pt(S2, 0, [](double e) { return Vec{0.3, std::exp(-1 / e)}; }), pt(S2, 0, [](double) { return Vec{0.3, 0.0}; })},
  };
  for (const auto& [M, p, q] : cases) {
    auto v = points_equal(p, q, *M.metric, cfg);
    REQUIRE(v.parts.size() == 2);
    CHECK(v.parts[0].status == v.parts[1].status);
  }
}
