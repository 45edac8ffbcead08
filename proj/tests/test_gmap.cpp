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
#include <numbers>

#include "doctest.h"
#include "gcm/error.hpp"
#include "gcm/gmap.hpp"

using namespace gcm;
using std::numbers::pi;

namespace {

Manifold R1() { return builtin::euclidean(1); }

MapNet real_net(const Manifold& X, const Manifold& Y, std::function<Jet(double, const Jet&)> f, std::string tag) {
  return MapNet(X.atlas, Y.atlas,
                [f](double e, int, std::span<const Jet> x) -> std::optional<ChartJets> {
                  return ChartJets{0, {f(e, x[0])}};
                },
                std::move(tag));
}

Jet h_eps(double e, const Jet& x) { return (1 + e) / 2 * (tanh(x) + tanh(x / e)); }

MapNet s1_net(const Manifold& X, const Manifold& S1, std::function<Jet(double, const Jet&)> angle, std::string tag) {
  return MapNet(X.atlas, S1.atlas,
                [angle](double e, int, std::span<const Jet> x) -> std::optional<ChartJets> {
                  return builtin::circle_point(angle(e, x[0]));
                },
                std::move(tag));
}

CompactRegion interval(double a, double b) { return CompactRegion{{{0, Box{{a}, {b}}}}, 33}; }

}  // namespace

TEST_CASE("sigma(sin) is c-bounded and moderate with N = 0") {
  Config cfg;
  auto X = R1();
  auto u = real_net(X, X, [](double, const Jet& x) { return sin(x); }, "sin");
  auto cb = check_cbounded(u, interval(0, 1), cfg);
  CHECK(cb.verdict.pass());
  REQUIRE(cb.image.size() == 1);
  CHECK(cb.image[0].box.lo[0] <= 0.0);
  CHECK(cb.image[0].box.hi[0] >= std::sin(1.0));
  auto m = check_moderate(u, interval(0, 1), cfg);
  CHECK(m.pass());
  CHECK(*m.order == 0.0);
}

TEST_CASE("u_eps = eps into (0,2) escapes to the boundary") {
  Config cfg;
  auto X = R1();
  auto Y = builtin::euclidean(1, {0.0}, {2.0});
  auto u = real_net(X, Y, [](double e, const Jet& x) { return x * 0.0 + e; }, "eps");
  auto cb = check_cbounded(u, interval(0, 1), cfg);
  CHECK(cb.verdict.fail());
  REQUIRE(cb.verdict.witness);
  CHECK(cb.verdict.witness->eps == doctest::Approx(std::pow(0.5, 16)));
  CHECK(check_moderate(u, interval(0, 1), cfg).fail());

  auto Z = builtin::euclidean(1, {std::exp(0.5)}, {kInf});
  auto psi = real_net(X, Z, [](double e, const Jet& x) { return exp(x * 0.0 + 1.0 / e); }, "psi(eps)");
  auto s = local_sup_series(psi, interval(0, 1), 0, 0, 0, cfg);
  auto v = judge_moderate(s, cfg);
  CHECK(v.fail());
  REQUIRE(v.estimate);
  CHECK(v.estimate->slope < -50);
}

TEST_CASE("S1 jump net: c-bounded, moderate with k=1 slope -1, single chart") {
  Config cfg;
  auto X = R1();
  auto S1 = builtin::circle();
  auto u = s1_net(X, S1, [](double e, const Jet& x) { return pi * h_eps(e, x); }, "s1_jump");
  auto K = interval(-1, 1);
  CHECK(check_cbounded(u, K, cfg).verdict.pass());
  auto m = check_moderate(u, K, cfg);
  CHECK(m.pass());
  bool saw_k1 = false;
  for (const auto& p : m.parts) {
    if (p.label.find("->A k=1") == std::string::npos || !p.estimate) continue;
    CHECK(p.estimate->slope == doctest::Approx(-1.0).epsilon(0.1));
    // Oracle: sup |(pi h_eps)'| = pi (1+eps)(1+1/eps)/2, attained at x = 0.
    for (const auto& s : p.series->samples)
      if (!s.zero()) CHECK(s.value() == doctest::Approx(pi * (1 + s.eps) * (1 + 1 / s.eps) / 2).epsilon(1e-10));
    saw_k1 = true;
  }
  CHECK(saw_k1);
  CHECK(*m.order == 3.0);
  auto sc = check_single_chart(u, K, cfg);
  CHECK(sc.verdict.pass());
  REQUIRE(sc.chart);
  CHECK(*sc.chart == "A");
}

TEST_CASE("winder is not single-chart") {
  Config cfg;
  auto X = R1();
  auto S1 = builtin::circle();
  auto u = s1_net(X, S1, [](double e, const Jet& x) { return x / e; }, "winder");
  auto K = interval(0, 1);
  CHECK(check_cbounded(u, K, cfg).verdict.pass());
  auto sc = check_single_chart(u, K, cfg);
  CHECK(sc.verdict.fail());
  CHECK(!sc.chart);
}

TEST_CASE("order-0 equivalence on negligible and polynomial perturbations") {
  Config cfg;
  auto X = R1();
  auto u = real_net(X, X, [](double, const Jet& x) { return sin(x); }, "sin");
  auto v = real_net(X, X, [](double e, const Jet& x) { return sin(x) + std::exp(-1 / e); }, "sin+exp");
  auto w = real_net(X, X, [](double e, const Jet& x) { return sin(x) + e * e; }, "sin+eps^2");
  auto K = interval(0, 1);
  auto same = check_equiv0(u, u, K, *X.metric, cfg);
  CHECK(same.pass());
  CHECK(routes_agree(same));
  auto a = check_equiv0(u, v, K, *X.metric, cfg);
  CHECK(a.pass());
  CHECK(routes_agree(a));
  auto b = check_equiv0(u, w, K, *X.metric, cfg);
  CHECK(b.fail());
  CHECK(routes_agree(b));
  CHECK(*b.parts[0].parts[1].order == 2.0);
  CHECK(check_equiv(u, v, {K}, *X.metric, cfg).pass());
  CHECK(check_equiv(u, w, {K}, *X.metric, cfg).fail());
}

TEST_CASE("S1 jump nets: negligible shift is equivalent, eps bump is not") {
  Config cfg;
  auto X = R1();
  auto S1 = builtin::circle();
  auto bump = [](const Jet& x) { return exp(-1.0 / (1.0 - x * x * 4.0)); };  // support |x| < 1/2
  auto u = s1_net(X, S1, [](double e, const Jet& x) { return pi * h_eps(e, x); }, "h");
  auto v = s1_net(X, S1, [](double e, const Jet& x) { return pi * (h_eps(e, x) + std::exp(-1 / e)); }, "h+exp");
  auto w = s1_net(
      X, S1,
      [bump](double e, const Jet& x) {
        if (std::fabs(x.value()) >= 0.5) return pi * h_eps(e, x);
        return pi * (h_eps(e, x) + e * bump(x));
      },
      "h+eps bump");
  auto K = interval(-1, 1);
  CHECK(check_equiv(u, v, {K}, *S1.metric, cfg).pass());
  auto f = check_equiv(u, w, {K}, *S1.metric, cfg);
  CHECK(f.fail());
  auto e0 = check_equiv0(u, w, K, *S1.metric, cfg);
  CHECK(e0.fail());
  CHECK(routes_agree(e0));
  REQUIRE(e0.parts[0].estimate);
  CHECK(e0.parts[0].estimate->slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("composition matches the closed-form composite") {
  Config cfg;
  auto X = R1();
  auto sq = real_net(X, X, [](double, const Jet& y) { return y * y; }, "sq");
  auto shift = real_net(X, X, [](double e, const Jet& x) { return x + e; }, "shift");
  auto c = compose(sq, shift, cfg, {interval(-1, 1)});
  for (double e : {0.5, 0.01, 1e-4})
    for (double x : {-0.7, 0.0, 0.3}) {
      auto y = c.value(e, Point{0, {x}});
      REQUIRE(y);
      CHECK(y->x[0] == doctest::Approx((x + e) * (x + e)).epsilon(1e-12));
    }
  REQUIRE(c.provenance.size() == 1);
  CHECK(c.provenance[0].find("Pass") != std::string::npos);
  auto S1 = builtin::circle();
  auto jump = s1_net(X, S1, [](double e, const Jet& x) { return pi * h_eps(e, x); }, "s1_jump");
  auto height = MapNet(S1.atlas, X.atlas,
                       [](double, int, std::span<const Jet> t) -> std::optional<ChartJets> {
                         return ChartJets{0, {sin(t[0])}};
                       },
                       "sin(theta)");
  auto hc = compose(height, jump, cfg);
  CHECK(check_moderate(hc, interval(-1, 1), cfg).pass());
}
