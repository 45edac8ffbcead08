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
#include <random>

#include "doctest.h"
#include "gcm/asymptotics.hpp"
#include "gcm/error.hpp"

using namespace gcm;

namespace {

template <class F>
SupSeries series_of(F f, EpsGridSpec spec = {}) {
  SupSeries s;
  EpsGrid g(spec);
  for (double e : g.values()) s.add(e, f(e));
  return s;
}

}  // namespace

TEST_CASE("power laws are fitted exactly") {
  Config cfg;
  for (int p : {-7, -3, -1, 0, 1, 2, 6}) {
    auto s = series_of([&](double e) { return 3.0 * std::pow(e, p); });
    auto est = fit_order(s);
    CHECK(est.slope == doctest::Approx(p).epsilon(1e-9));
    CHECK(est.r2 == doctest::Approx(1.0));
  }
  auto s = series_of([](double e) { return 1.0 / e; });
  auto v = judge_moderate(s, cfg);
  CHECK(v.pass());
  CHECK(*v.order == 1.0);
}

TEST_CASE("exponential growth is not moderate, exponential decay is negligible") {
  Config cfg;
  auto grow = series_of([](double e) { return std::exp(1.0 / e); });
  auto vg = judge_moderate(grow, cfg);
  CHECK(vg.fail());
  REQUIRE(vg.witness);
  auto decay = series_of([](double e) { return std::exp(-1.0 / e); });
  CHECK(judge_negligible(decay, cfg).pass());
  CHECK(judge_moderate(decay, cfg).pass());
}

TEST_CASE("polynomial decay below the probe fails negligibility") {
  Config cfg;
  auto v = judge_negligible(series_of([](double e) { return e * e; }), cfg);
  CHECK(v.fail());
  CHECK(*v.order == 2.0);
  CHECK(judge_negligible(series_of([](double e) { return std::pow(e, 7); }), cfg).pass());
  CHECK(judge_negligible(series_of([](double) { return 1.0; }), cfg).fail());
}

TEST_CASE("vanishing: logarithmic decay passes, constants fail") {
  Config cfg;
  CHECK(judge_vanishing(series_of([](double e) { return 1.0 / std::log(1.0 / e); }), cfg).pass());
  CHECK(judge_vanishing(series_of([](double) { return 0.5; }), cfg).fail());
  CHECK(judge_vanishing(series_of([](double e) { return e; }), cfg).pass());
}

TEST_CASE("zeros and overflow") {
  Config cfg;
  auto z = series_of([](double) { return 0.0; });
  auto est = fit_order(z);
  CHECK(std::isinf(est.slope));
  CHECK(judge_negligible(z, cfg).pass());
  SupSeries o;
  EpsGrid g;
  for (double e : g.values()) o.add_log(e, 1.0 / e > 709 ? std::numeric_limits<double>::infinity() : 1.0 / e);
  auto v = judge_moderate(o, cfg);
  CHECK(v.fail());
  CHECK(v.witness->eps == doctest::Approx(std::pow(0.5, 10)));
  REQUIRE(v.estimate);
  CHECK(v.estimate->slope < -50);
}

TEST_CASE("too few samples") {
  Config cfg;
  auto s = series_of([](double e) { return e; }, EpsGridSpec{0.5, 2, 5});
  CHECK_THROWS_AS(fit_order(s), Error);
  CHECK(judge_moderate(s, cfg).status == Status::Inconclusive);
}

TEST_CASE("property: slope is invariant under scaling and shifts by added powers") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> P(-8.0, 8.0), C(0.01, 100.0);
  for (int t = 0; t < 200; ++t) {
    const double p = P(rng), c = C(rng);
    auto a = fit_order(series_of([&](double e) { return std::pow(e, p); }));
    auto b = fit_order(series_of([&](double e) { return c * std::pow(e, p); }));
    auto d = fit_order(series_of([&](double e) { return c * std::pow(e, p + 1); }));
    CHECK(a.slope == doctest::Approx(b.slope).epsilon(1e-9));
    CHECK(d.slope - a.slope == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("property: refining the grid keeps the estimate") {
  auto coarse = fit_order(series_of([](double e) { return std::pow(e, -3) * (1 + e); }));
  auto fine = fit_order(series_of([](double e) { return std::pow(e, -3) * (1 + e); }, EpsGridSpec{0.5, 2, 24}));
  CHECK(std::fabs(coarse.slope - fine.slope) < 0.05);
}

TEST_CASE("conjunction") {
  Config cfg;
  auto a = judge_moderate(series_of([](double e) { return 1 / e; }), cfg);
  auto b = judge_moderate(series_of([](double e) { return std::pow(e, -4); }), cfg);
  a.label = "k=0";
  b.label = "k=1";
  auto v = conjunction("moderate", {a, b}, Worst::MostNegativeSlope);
  CHECK(v.pass());
  CHECK(*v.order == 4.0);
  CHECK(v.find("k=1") != nullptr);
  auto f = judge_moderate(series_of([](double e) { return std::exp(1 / e); }), cfg);
  CHECK(conjunction("moderate", {a, f}, Worst::MostNegativeSlope).fail());
}

TEST_CASE("moderate bound is the ceiling of the growth exponent") {
  Config cfg;
  for (double a : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    auto v = judge_moderate(series_of([&](double e) { return std::pow(e, -a); }), cfg);
    CHECK(v.pass());
    REQUIRE(v.order);
    CHECK(*v.order == std::ceil(a));
  }
}

TEST_CASE("property: negligible series are moderate with N = 0") {
  Config cfg;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> P(0.0, 12.0), C(0.01, 100.0), R(1.0, 4.0);
  for (int t = 0; t < 300; ++t) {
    const double p = P(rng), c = C(rng), r = R(rng);
    const int family = t % 3;
    auto s = series_of([&](double e) {
      if (family == 0) return c * std::pow(e, p);
      if (family == 1) return c * std::exp(-r / e);
      return c * std::pow(e, p) * (1.0 + std::sin(1.0 / e) / 2);
    });
    auto n = judge_negligible(s, cfg);
    if (!n.pass()) continue;
    auto m = judge_moderate(s, cfg);
    CHECK(m.pass());
    REQUIRE(m.order);
    CHECK(*m.order == 0.0);
  }
}

TEST_CASE("property: enlarging the grid never flips Pass to Fail on power laws") {
  Config cfg;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> P(-9.0, 9.0), C(0.01, 100.0);
  for (int t = 0; t < 100; ++t) {
    const double p = P(rng), c = C(rng);
    auto f = [&](double e) { return c * std::pow(e, p); };
    Status prev_mod = Status::Inconclusive, prev_neg = Status::Inconclusive;
    for (int kmax = 10; kmax <= 24; kmax += 2) {
      Config k = cfg;
      k.eps_grid.k_max = kmax;
      auto s = series_of(f, k.eps_grid);
      auto mod = judge_moderate(s, k).status, neg = judge_negligible(s, k).status;
      if (prev_mod == Status::Pass) CHECK(mod != Status::Fail);
      if (prev_neg == Status::Pass) CHECK(neg != Status::Fail);
      prev_mod = mod;
      prev_neg = neg;
    }
  }
}
