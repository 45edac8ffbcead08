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
#include "gcm/manifold.hpp"

using namespace gcm;
using std::numbers::pi;

TEST_CASE("box margin") {
  Box b{{-1.0}, {1.0}};
  CHECK(b.margin(Vec{0.0}) == doctest::Approx(0.5));
  CHECK(b.margin(Vec{0.9}) == doctest::Approx(0.05));
  Box u{{-kInf}, {kInf}};
  CHECK(u.margin(Vec{0.0}) == doctest::Approx(0.5));
  CHECK(u.margin(Vec{1e6}) < 1e-5);
}

TEST_CASE("circle transitions and distance") {
  auto M = builtin::circle();
  const int A = M.atlas->chart_index("A"), B = M.atlas->chart_index("B");
  CHECK(M.atlas->transition(A, B, Vec{-0.5})[0] == doctest::Approx(2 * pi - 0.5));
  CHECK(M.atlas->transition(B, A, Vec{4.0})[0] == doctest::Approx(4.0 - 2 * pi));
  CHECK_THROWS_AS(M.atlas->transition(A, B, Vec{0.0}), Error);
  Point p{A, {3.0}}, q{B, {2 * pi - 3.0}};
  CHECK(distance(*M.atlas, *M.metric, p, q) == doctest::Approx(2 * pi - 6.0));
  CHECK(transition_roundtrip_error(*M.atlas) < 1e-12);
}

TEST_CASE("sphere stereographic transition agrees with the embedding") {
  auto M = builtin::sphere();
  const int N = M.atlas->chart_index("N"), S = M.atlas->chart_index("S");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (int t = 0; t < 100; ++t) {
    Point p{N, {U(rng), U(rng)}};
    auto q = M.atlas->to_chart(p, S);
    REQUIRE(q);
    Eigen::Vector3d a = builtin::sphere_embed(p), b = builtin::sphere_embed(*q);
    CHECK((a - b).norm() < 1e-12);
    CHECK(a.norm() == doctest::Approx(1.0));
    Point r = builtin::sphere_from_embedding(a);
    CHECK((builtin::sphere_embed(r) - a).norm() < 1e-12);
  }
  CHECK(transition_roundtrip_error(*M.atlas) < 1e-10);
  CHECK(cocycle_error(*M.atlas) < 1e-10);
}

TEST_CASE("lattice distance approaches the great-circle distance") {
  auto S2 = builtin::sphere();
  const int N = S2.atlas->chart_index("N");
  RiemannianMetric g(S2.atlas, [&](int c, std::span<const double> x) { return S2.metric->at(c, x); });
  CompactRegion R{{{N, Box{{-1.2, -1.2}, {1.2, 1.2}}}}, 17};
  Point p{N, {-0.5, -0.3}}, q{N, {0.6, 0.4}};
  const double exact = S2.metric->analytic_distance(p, q);
  const double approx = lattice_distance(*S2.atlas, g, R, p, q);
  CHECK(approx >= exact * (1 - 1e-9));
  // 8-neighbour lattice paths overestimate by at most sqrt(4 - 2 sqrt 2).
  CHECK(approx < exact * (std::sqrt(4 - 2 * std::sqrt(2.0)) + 0.01));
}

TEST_CASE("distance across components is infinite") {
  auto U = builtin::disjoint_union(builtin::circle(), builtin::euclidean(1));
  Point p{0, {0.3}}, q{U.atlas->num_charts() - 1, {0.3}};
  CHECK(U.atlas->num_components() == 2);
  CHECK(std::isinf(distance(*U.atlas, *U.metric, p, q)));
}

TEST_CASE("product metric distance is the l2 combination") {
  auto T = builtin::product(builtin::circle(), builtin::euclidean(1));
  Point p{0, {0.1, 0.0}}, q{0, {0.4, 0.4}};
  CHECK(distance(*T.atlas, *T.metric, p, q) == doctest::Approx(0.5));
}

TEST_CASE("lipschitz bound dominates brute-force difference quotients") {
  LocalMap f = LocalMap::exact(1, 1, [](std::span<const Jet> x) { return JetVec{sin(3.0 * x[0]) * x[0]}; });
  Box K{{-1.0}, {1.0}};
  auto lb = lipschitz_bound(f, K);
  double worst = 0;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j < i; ++j) {
      double a = -1 + i / 100.0, b = -1 + j / 100.0;
      worst = std::max(worst, std::fabs(f.value(Vec{a})[0] - f.value(Vec{b})[0]) / (a - b));
    }
  CHECK(lb.C >= worst);
  Box tight{{-1.0}, {1.0}};
  LocalMap g = LocalMap::exact(1, 1, [](std::span<const Jet> x) { return JetVec{x[0]}; },
                               [](std::span<const double> x) { return std::fabs(x[0]) < 1.0; });
  CHECK_THROWS_AS(lipschitz_bound(g, tight), Error);
}

TEST_CASE("compact region lattice and validation") {
  auto M = builtin::circle();
  CompactRegion R{{{0, Box{{-1.0}, {1.0}}}}, 33};
  CHECK(R.lattice().size() == 33);
  CHECK(R.sample(10, 5).size() == 43);
  CHECK(R.sample(10, 5)[40].x == R.sample(10, 5)[40].x);
  CompactRegion bad{{{0, Box{{-4.0}, {1.0}}}}, 33};
  CHECK_THROWS_AS(bad.validate(*M.atlas), Error);
}
