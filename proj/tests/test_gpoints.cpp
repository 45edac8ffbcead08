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
#include <random>

#include "doctest.h"
#include "gcm/error.hpp"
#include "gcm/gpoints.hpp"

using namespace gcm;
using std::numbers::pi;

namespace {

MapNet real_net(const Manifold& X, std::function<Jet(double, const Jet&)> f, std::string tag) {
  return MapNet(X.atlas, X.atlas,
                [f](double e, int, std::span<const Jet> x) -> std::optional<ChartJets> {
                  return ChartJets{0, {f(e, x[0])}};
                },
                std::move(tag));
}

GenPoint real_point(const Manifold& X, std::function<double(double)> f, const Config& cfg, std::string tag) {
  return GenPoint::from_net(X.atlas, [f](double e) { return Point{0, {f(e)}}; }, cfg, std::move(tag));
}

CompactRegion interval(double a, double b) { return CompactRegion{{{0, Box{{a}, {b}}}}, 33}; }

}  // namespace

TEST_CASE("points_equal on closed-form point nets") {
  Config cfg;
  auto X = builtin::euclidean(1);
  auto zero = real_point(X, [](double) { return 0.0; }, cfg, "0");
  auto fast = real_point(X, [](double e) { return std::exp(-1 / e); }, cfg, "exp(-1/eps)");
  auto slow = real_point(X, [](double e) { return e * e; }, cfg, "eps^2");
  CHECK(points_equal(zero, zero, *X.metric, cfg).pass());
  auto a = points_equal(zero, fast, *X.metric, cfg);
  CHECK(a.pass());
  CHECK(a.notes[0] == "routes agree");
  auto b = points_equal(zero, slow, *X.metric, cfg);
  CHECK(b.fail());
  CHECK(b.notes[0] == "routes agree");
  CHECK(b.estimate->slope == doctest::Approx(2.0));
}

TEST_CASE("points on the circle across the chart seam") {
  Config cfg;
  auto S1 = builtin::circle();
  auto p = GenPoint::from_net(S1.atlas, [](double e) { return Point{0, {pi - 0.5 + std::exp(-1 / e)}}; }, cfg, "p");
  auto q = GenPoint::from_net(S1.atlas, [](double) { return Point{1, {pi - 0.5}}; }, cfg, "q");
  auto v = points_equal(p, q, *S1.metric, cfg);
  CHECK(v.pass());
  CHECK(v.notes[0] == "routes agree");
}

TEST_CASE("eval_at follows the representative") {
  Config cfg;
  auto X = builtin::euclidean(1);
  auto u = real_net(X, [](double, const Jet& x) { return sin(x); }, "sin");
  auto c = GenPoint::constant(X.atlas, Point{0, {std::sin(1.0)}}, cfg, "sin 1");
  auto p1 = real_point(X, [](double e) { return 1 + std::exp(-1 / e); }, cfg, "1+exp");
  auto p2 = real_point(X, [](double e) { return 1 + e; }, cfg, "1+eps");
  auto one = GenPoint::constant(X.atlas, Point{0, {1.0}}, cfg, "1");
  CHECK(eval_at(u, one, cfg).at(0.1).x[0] == doctest::Approx(std::sin(1.0)));
  CHECK(points_equal(eval_at(u, p1, cfg), c, *X.metric, cfg).pass());
  auto f = points_equal(eval_at(u, p2, cfg), c, *X.metric, cfg);
  CHECK(f.fail());
  CHECK(f.estimate->slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("separate_by_points finds a witness exactly for non-equivalent nets") {
  Config cfg;
  auto X = builtin::euclidean(1);
  auto u = real_net(X, [](double, const Jet& x) { return sin(x); }, "sin");
  auto w = real_net(X, [](double e, const Jet& x) { return sin(x) + e * e; }, "sin+eps^2");
  auto K = interval(0, 1);
  CHECK(!separate_by_points(u, u, K, *X.metric, cfg));
  auto s = separate_by_points(u, w, K, *X.metric, cfg);
  REQUIRE(s);
  CHECK(s->evaluation.fail());
  CHECK(s->evaluation.estimate->slope == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("grid slot is piecewise constant") {
  std::vector<double> g{0.25, 0.125, 0.0625};
  CHECK(grid_slot(g, 0.9) == 0);
  CHECK(grid_slot(g, 0.25) == 0);
  CHECK(grid_slot(g, 0.2) == 0);
  CHECK(grid_slot(g, 0.125) == 1);
  CHECK(grid_slot(g, 0.1) == 1);
  CHECK(grid_slot(g, 0.0625) == 2);
  CHECK(grid_slot(g, 1e-9) == 2);
}

TEST_CASE("property: points_equal is an equivalence on sampled point nets") {
  Config cfg;
  auto X = builtin::euclidean(1);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1, 1);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int t = 0; t < 10; ++t) {
    std::vector<GenPoint> pts;
    for (int i = 0; i < 3; ++i) {
      const double c = U(rng) * 0.01;
      const int k = kind(rng);
      pts.push_back(real_point(
          X, [c, k](double e) { return 0.5 + (k == 0 ? 0.0 : k == 1 ? c * std::exp(-1 / e) : c * e); }, cfg,
          "p" + std::to_string(i)));
    }
    const auto& g = *X.metric;
    for (int i = 0; i < 3; ++i) {
      CHECK(points_equal(pts[i], pts[i], g, cfg).pass());
      for (int j = 0; j < 3; ++j) {
        const bool ij = points_equal(pts[i], pts[j], g, cfg).pass();
        CHECK(ij == points_equal(pts[j], pts[i], g, cfg).pass());
        for (int k = 0; k < 3; ++k)
          if (ij && points_equal(pts[j], pts[k], g, cfg).pass()) CHECK(points_equal(pts[i], pts[k], g, cfg).pass());
      }
    }
  }
}

TEST_CASE("generalized numbers") {
  Config cfg;
  GenNumber r([](double e) { return 1 / e; }, "1/eps");
  auto v = r.check_moderate(cfg);
  CHECK(v.pass());
  REQUIRE(r.moderate_bound);
  CHECK(r.moderate_bound->slope == doctest::Approx(-1.0));
  GenNumber s([](double e) { return 1 / e + std::exp(-1 / e); }, "s");
  CHECK(numbers_equal(r, s, cfg).pass());
  CHECK(numbers_equal(r * GenNumber::constant(2.0), r + r, cfg).pass());
  CHECK(numbers_equal(r, r + GenNumber([](double e) { return e; }), cfg).fail());
}
