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

#include "gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "gcm/error.hpp"
#include "gcm/parallel.hpp"

namespace gcm {

namespace {

using std::numbers::pi;
using JetFn = std::function<Jet(double, const Jet&)>;

Jet h_eps(double e, const Jet& x) { return (1 + e) / 2 * (tanh(x) + tanh(x / e)); }
double neg(double e) { return std::exp(-1.0 / e); }

MapNet real_net(const Manifold& X, const Manifold& Y, JetFn f, std::string tag) {
  return MapNet(X.atlas, Y.atlas,
                [f](double e, int, std::span<const Jet> x) -> std::optional<ChartJets> {
                  return ChartJets{0, {f(e, x[0])}};
                },
                std::move(tag));
}

MapNet s1_net(const Manifold& X, const Manifold& S1, JetFn angle, std::string tag) {
  return MapNet(X.atlas, S1.atlas,
                [angle](double e, int, std::span<const Jet> x) -> std::optional<ChartJets> {
                  return builtin::circle_point(angle(e, x[0]));
                },
                std::move(tag));
}

/// R -> S^2 through the stereographic chart N.
MapNet sphere_net(const Manifold& X, const Manifold& S2, std::function<JetVec(double, const Jet&)> f, std::string tag) {
  return MapNet(X.atlas, S2.atlas,
                [f](double e, int, std::span<const Jet> x) -> std::optional<ChartJets> {
                  return ChartJets{0, f(e, x[0])};
                },
                std::move(tag));
}

CompactRegion interval(double a, double b, const Config& cfg) {
  return CompactRegion{{{0, Box{{a}, {b}}}}, cfg.lattice_density};
}

Jet cst(const Jet& like, double c) { return like * 0.0 + c; }

Verdict flag(const std::string& check, const std::string& label, bool ok, const std::string& note) {
  Verdict v;
  v.check = check;
  v.label = label;
  v.status = ok ? Status::Pass : Status::Fail;
  v.notes.push_back(note);
  return v;
}

Expectation expect(std::string label, Status expected, std::string oracle, Verdict actual) {
  return Expectation{std::move(label), expected, std::move(oracle), std::move(actual)};
}

Status pass_if(bool b) { return b ? Status::Pass : Status::Fail; }

struct Spaces {
  Manifold R = builtin::euclidean(1);
  Manifold R2 = builtin::euclidean(2);
  Manifold S1 = builtin::circle();
  Manifold S2 = builtin::sphere();
};

const Spaces& spaces() {
  static const Spaces s;
  return s;
}

}  // namespace

std::vector<NamedNet> gallery_nets(const Config& cfg) {
  const auto& S = spaces();
  const auto open02 = builtin::euclidean(1, {0.0}, {2.0});
  const auto psi_range = builtin::euclidean(1, {std::exp(0.5)}, {kInf});
  std::vector<NamedNet> out;
  out.push_back({"epsilon_into_0_2", "u_eps(x) = eps as a map R -> (0,2)", S.R, open02,
                 real_net(S.R, open02, [](double e, const Jet& x) { return cst(x, e); }, "epsilon_into_0_2"),
                 interval(0, 1, cfg)});
  out.push_back({"heaviside_tanh", "h_eps(x) = (1+eps)/2 (tanh x + tanh(x/eps))", S.R, S.R,
                 real_net(S.R, S.R, h_eps, "heaviside_tanh"), interval(-1, 1, cfg)});
  out.push_back({"psi_epsilon", "psi(u_eps) = exp(1/eps) with psi(y) = exp(1/y): (0,2) -> (e^(1/2), inf)", S.R,
                 psi_range,
                 real_net(S.R, psi_range, [](double e, const Jet& x) { return exp(cst(x, 1.0 / e)); }, "psi_epsilon"),
                 interval(0, 1, cfg)});
  out.push_back({"s1_jump", "u_eps = exp(i pi h_eps): R -> S^1", S.R, S.S1,
                 s1_net(S.R, S.S1, [](double e, const Jet& x) { return pi * h_eps(e, x); }, "s1_jump"),
                 interval(-1, 1, cfg)});
  out.push_back({"sigma_sin", "constant net sin: R -> R", S.R, S.R,
                 real_net(S.R, S.R, [](double, const Jet& x) { return sin(x); }, "sigma_sin"), interval(0, 1, cfg)});
  out.push_back({"winder", "u_eps(x) = exp(i x/eps): R -> S^1", S.R, S.S1,
                 s1_net(S.R, S.S1, [](double e, const Jet& x) { return x / e; }, "winder"), interval(0, 1, cfg)});
  return out;
}

std::optional<NamedNet> find_gallery_net(const std::string& name, const Config& cfg) {
  for (auto& n : gallery_nets(cfg))
    if (n.name == name) return n;
  return std::nullopt;
}

std::vector<NetPair> equivalence_corpus(const Config& cfg) {
  const auto& S = spaces();
  const auto K01 = interval(0, 1, cfg), K11 = interval(-1, 1, cfg);
  auto sinf = [](double, const Jet& x) { return sin(x); };
  auto jump = [](double e, const Jet& x) { return pi * h_eps(e, x); };
  auto parabola = [](double, const Jet& x) { return JetVec{x, x * x}; };
  std::vector<NetPair> out;
  out.push_back({"sin~sin+exp(-1/eps)", S.R, S.R, real_net(S.R, S.R, sinf, "sin"),
                 real_net(S.R, S.R, [](double e, const Jet& x) { return sin(x) + neg(e); }, "sin+exp(-1/eps)"), K01,
                 true, 0});
  out.push_back({"h~h+exp(-1/eps)", S.R, S.R, real_net(S.R, S.R, h_eps, "h"),
                 real_net(S.R, S.R, [](double e, const Jet& x) { return h_eps(e, x) + neg(e); }, "h+exp(-1/eps)"), K11,
                 true, 0});
  out.push_back({"s1_jump~shifted", S.R, S.S1, s1_net(S.R, S.S1, jump, "s1_jump"),
                 s1_net(S.R, S.S1, [](double e, const Jet& x) { return pi * (h_eps(e, x) + neg(e)); }, "s1_jump+exp"),
                 K11, true, 0});
  out.push_back({"parabola~shifted", S.R, S.S2, sphere_net(S.R, S.S2, parabola, "N(x,x^2)"),
                 sphere_net(S.R, S.S2, [](double e, const Jet& x) { return JetVec{x + neg(e), x * x}; },
                            "N(x+exp(-1/eps),x^2)"),
                 K11, true, 0});
  out.push_back({"winder~shifted", S.R, S.S1, s1_net(S.R, S.S1, [](double e, const Jet& x) { return x / e; }, "winder"),
                 s1_net(S.R, S.S1, [](double e, const Jet& x) { return x / e + neg(e); }, "winder+exp"), K01, true, 0});
  out.push_back({"sin/sin+eps^2", S.R, S.R, real_net(S.R, S.R, sinf, "sin"),
                 real_net(S.R, S.R, [](double e, const Jet& x) { return sin(x) + e * e; }, "sin+eps^2"), K01, false,
                 2});
  out.push_back({"h/h+eps*bump", S.R, S.R, real_net(S.R, S.R, h_eps, "h"),
                 real_net(S.R, S.R,
                          [](double e, const Jet& x) {
                            return h_eps(e, x) + e * exp(-1.0 / (1.0 - x * x));
                          },
                          "h+eps*bump"),
                 interval(-0.5, 0.5, cfg), false, 1});
  out.push_back({"s1_jump/+eps", S.R, S.S1, s1_net(S.R, S.S1, jump, "s1_jump"),
                 s1_net(S.R, S.S1, [](double e, const Jet& x) { return pi * h_eps(e, x) + e; }, "s1_jump+eps"), K11,
                 false, 1});
  out.push_back({"parabola/+eps^2", S.R, S.S2, sphere_net(S.R, S.S2, parabola, "N(x,x^2)"),
                 sphere_net(S.R, S.S2, [](double e, const Jet& x) { return JetVec{x, x * x + e * e}; },
                            "N(x,x^2+eps^2)"),
                 K11, false, 2});
  out.push_back({"cos/cos+1/2", S.R, S.R, real_net(S.R, S.R, [](double, const Jet& x) { return cos(x); }, "cos"),
                 real_net(S.R, S.R, [](double, const Jet& x) { return cos(x) + 0.5; }, "cos+1/2"), K01, false, 0});
  return out;
}

std::vector<ComposePair> composition_corpus(const Config& cfg) {
  const auto& S = spaces();
  const auto pos = builtin::euclidean(1, {0.0}, {kInf});
  const auto K11 = interval(-1, 1, cfg);
  std::vector<ComposePair> out;
  out.push_back({"exp.sin", S.R, S.R, S.R, real_net(S.R, S.R, [](double, const Jet& x) { return sin(x); }, "sin"),
                 real_net(S.R, S.R, [](double, const Jet& y) { return exp(y); }, "exp"),
                 real_net(S.R, S.R, [](double, const Jet& x) { return exp(sin(x)); }, "exp(sin)"),
                 real_net(S.R, S.R, [](double e, const Jet& x) { return sin(x) + neg(e); }, "sin+exp(-1/eps)"), K11});
  out.push_back({"log.(x^2+1)", S.R, pos, S.R,
                 real_net(S.R, pos, [](double, const Jet& x) { return x * x + 1.0; }, "x^2+1"),
                 real_net(pos, S.R, [](double, const Jet& y) { return log(y); }, "log"),
                 real_net(S.R, S.R, [](double, const Jet& x) { return log(x * x + 1.0); }, "log(x^2+1)"),
                 real_net(S.R, pos, [](double e, const Jet& x) { return x * x + 1.0 + neg(e); }, "x^2+1+exp(-1/eps)"),
                 K11});
  out.push_back({"atan3.tanh", S.R, S.R, S.R, real_net(S.R, S.R, [](double, const Jet& x) { return tanh(x); }, "tanh"),
                 real_net(S.R, S.R, [](double, const Jet& y) { return atan(3.0 * y); }, "atan(3y)"),
                 real_net(S.R, S.R, [](double, const Jet& x) { return atan(3.0 * tanh(x)); }, "atan(3 tanh)"),
                 real_net(S.R, S.R, [](double e, const Jet& x) { return tanh(x) - neg(e); }, "tanh-exp(-1/eps)"), K11});
  out.push_back({"circle(pi sin).half", S.R, S.R, S.S1,
                 real_net(S.R, S.R, [](double, const Jet& x) { return 0.5 * x; }, "x/2"),
                 s1_net(S.R, S.S1, [](double, const Jet& y) { return pi * sin(y); }, "circle(pi sin)"),
                 s1_net(S.R, S.S1, [](double, const Jet& x) { return pi * sin(0.5 * x); }, "circle(pi sin(x/2))"),
                 real_net(S.R, S.R, [](double e, const Jet& x) { return 0.5 * x + neg(e); }, "x/2+exp(-1/eps)"), K11});
  out.push_back({"height.circle(2x)", S.R, S.S1, S.R,
                 s1_net(S.R, S.S1, [](double, const Jet& x) { return 2.0 * x; }, "circle(2x)"),
                 MapNet(S.S1.atlas, S.R.atlas,
                        [](double, int, std::span<const Jet> y) -> std::optional<ChartJets> {
                          return ChartJets{0, {sin(y[0])}};
                        },
                        "height"),
                 real_net(S.R, S.R, [](double, const Jet& x) { return sin(2.0 * x); }, "sin(2x)"),
                 s1_net(S.R, S.S1, [](double e, const Jet& x) { return 2.0 * x + neg(e); }, "circle(2x+exp(-1/eps))"),
                 K11});
  return out;
}

namespace {

SectionNet field(const BundlePtr& B, std::function<JetVec(double, std::span<const Jet>)> f, std::string tag) {
  return SectionNet::from_chart(B, 0, [f](double e, int, std::span<const Jet> x) { return f(e, x); }, std::move(tag));
}

GenPoint moving_point(const Manifold& M, std::function<Vec(double)> at, const Config& cfg, std::string tag) {
  return GenPoint::from_net(M.atlas, [at](double e) { return Point{0, at(e)}; }, cfg, std::move(tag));
}

}  // namespace

std::vector<TensorPair> tensor_corpus(const Config& cfg) {
  const auto& S = spaces();
  std::vector<TensorPair> out;
  {
    auto TR = VectorBundle::tangent(S.R);
    auto T02 = VectorBundle::tensor(S.R, 0, 2);
    auto p = moving_point(S.R, [](double e) { return Vec{0.3 + e}; }, cfg, "0.3+eps");
    auto q = [](double e) { return 0.3 + e + neg(e); };
    auto t = field(T02, [](double, auto x) { return JetVec{1.0 + x[0] * x[0]}; }, "(1+x^2)dx.dx");
    auto xi1 = field(TR, [](double, auto x) { return JetVec{cos(x[0])}; }, "cos");
    auto xi2 = field(TR, [](double e, auto x) { return JetVec{x[0] / e}; }, "x/eps");
    auto xi1b = field(TR, [q](double e, auto x) { return JetVec{cos(x[0]) + (x[0] - q(e))}; }, "cos+(x-q)");
    out.push_back({"g(xi,eta) on R", t, {}, {xi1, xi2}, {}, {xi1b, xi2}, p, true, 0});
    auto xi2plain = field(TR, [](double, auto x) { return JetVec{x[0]}; }, "x");
    auto xi1c = field(TR, [](double e, auto x) { return JetVec{cos(x[0]) + e}; }, "cos+eps");
    out.push_back({"g(xi,eta) on R, eps shift", t, {}, {xi1, xi2plain}, {}, {xi1c, xi2plain}, p, false, 1});
  }
  {
    auto TR = VectorBundle::tangent(S.R);
    auto CR = VectorBundle::cotangent(S.R);
    auto T11 = VectorBundle::tensor(S.R, 1, 1);
    auto p = moving_point(S.R, [](double e) { return Vec{-0.4 + 2 * e}; }, cfg, "-0.4+2eps");
    auto q = [](double e) { return -0.4 + 2 * e - neg(e); };
    auto t = field(T11, [](double, auto x) { return JetVec{2.0 + sin(x[0])}; }, "(2+sin)d.dx");
    auto w = field(CR, [](double, auto x) { return JetVec{x[0]}; }, "x dx");
    auto wb = field(CR, [q](double e, auto x) { return JetVec{x[0] + 3.0 * (x[0] - q(e))}; }, "x dx+3(x-q)dx");
    auto xi = field(TR, [](double e, auto x) { return JetVec{cst(x[0], 1.0 / e)}; }, "d/eps");
    out.push_back({"A(omega,xi) on R", t, {w}, {xi}, {wb}, {xi}, p, true, 0});
  }
  {
    auto TS = VectorBundle::tangent(S.S2);
    auto T02 = VectorBundle::tensor(S.S2, 0, 2);
    auto p = moving_point(S.S2, [](double e) { return Vec{0.2 + e, -0.1}; }, cfg, "N(0.2+eps,-0.1)");
    auto q0 = [](double e) { return 0.2 + e + neg(e); };
    auto t = field(T02, [](double, auto x) {
      const Jet c = 1.0 + x[0] * x[0];
      return JetVec{c, cst(x[0], 0.0), cst(x[0], 0.0), c};
    }, "(1+x0^2)delta");
    auto xi = field(TS, [](double, auto x) { return JetVec{cst(x[0], 1.0), x[0]}; }, "(1,x0)");
    auto xib = field(TS, [q0](double e, auto x) { return JetVec{1.0 + 2.0 * (x[0] - q0(e)), x[0]}; }, "(1+2(x0-q0),x0)");
    auto eta = field(TS, [](double e, auto x) { return JetVec{x[1], cst(x[0], 1.0 / e)}; }, "(x1,1/eps)");
    out.push_back({"g(xi,eta) on S2", t, {}, {xi, eta}, {}, {xib, eta}, p, true, 0});
  }
  {
    auto CR2 = VectorBundle::cotangent(S.R2);
    auto T10 = VectorBundle::tensor(S.R2, 1, 0);
    auto at = [](double e) { return Vec{0.5 - e, 0.25 + e * e}; };
    auto p = moving_point(S.R2, at, cfg, "(0.5-eps,0.25+eps^2)");
    auto q = [at](double e) {
      Vec v = at(e);
      v[0] += neg(e);
      v[1] -= neg(e);
      return v;
    };
    auto t = field(T10, [](double, auto x) { return JetVec{x[0], x[1] * x[1]}; }, "(x0,x1^2)");
    auto w = field(CR2, [](double, auto x) { return JetVec{cst(x[0], 1.0), x[1]}; }, "dx0+x1 dx1");
    auto wb = field(CR2, [q](double e, auto x) {
      const Vec c = q(e);
      return JetVec{1.0 + (x[0] - c[0]) * (x[1] - c[1]), x[1] + (x[0] - c[0])};
    }, "dx0+x1 dx1+(x-q)");
    out.push_back({"X(omega) on R2", t, {w}, {}, {wb}, {}, p, true, 0});
  }
  {
    auto TR2 = VectorBundle::tangent(S.R2);
    auto CR2 = VectorBundle::cotangent(S.R2);
    auto T22 = VectorBundle::tensor(S.R2, 2, 2);
    auto at = [](double e) { return Vec{0.1 + e, 0.7 - e}; };
    auto p = moving_point(S.R2, at, cfg, "(0.1+eps,0.7-eps)");
    auto q = [at](double e) {
      Vec v = at(e);
      v[0] += neg(e);
      v[1] += neg(e);
      return v;
    };
    auto t = field(T22, [](double, auto x) {
      JetVec c;
      for (int f = 0; f < 16; ++f) {
        const int i = f >> 3 & 1, j = f >> 2 & 1, k = f >> 1 & 1, l = f & 1;
        c.push_back(i == k && j == l ? 1.0 + x[0] * x[0] : 0.1 * x[1]);
      }
      return c;
    }, "T22");
    auto w1 = field(CR2, [](double, auto x) { return JetVec{cst(x[0], 1.0), x[0]}; }, "dx0+x0 dx1");
    auto w2 = field(CR2, [](double, auto x) { return JetVec{x[1], cst(x[0], 1.0)}; }, "x1 dx0+dx1");
    auto w1b = field(CR2, [q](double e, auto x) { return JetVec{1.0 + (x[0] - q(e)[0]), x[0]}; }, "w1+(x0-q0)dx0");
    auto v1 = field(TR2, [](double e, auto x) { return JetVec{cst(x[0], 1.0 / e), cst(x[0], 1.0)}; }, "(1/eps,1)");
    auto v2 = field(TR2, [](double, auto x) { return JetVec{x[0], x[1]}; }, "(x0,x1)");
    auto v2b = field(TR2, [q](double e, auto x) { return JetVec{x[0], x[1] + (x[1] - q(e)[1]) / e}; }, "v2+(x1-q1)/eps");
    out.push_back({"T(w,w,v,v) on R2", t, {w1, w2}, {v1, v2}, {w1b, w2}, {v1, v2b}, p, true, 0});
  }
  return out;
}

std::vector<SectionCase> section_corpus(const Config& cfg) {
  const auto& S = spaces();
  auto TR = VectorBundle::tangent(S.R);
  auto TS = VectorBundle::tangent(S.S1);
  const auto K11 = interval(-1, 1, cfg);
  const CompactRegion KS{{{0, Box{{-3.0}, {3.0}}}}, cfg.lattice_density};
  std::vector<SectionCase> out;
  out.push_back({"zero", S.R, field(TR, [](double, auto x) { return JetVec{cst(x[0], 0.0)}; }, "0"), K11, true, 0});
  out.push_back({"exp(-1/eps)(1+x^2)", S.R,
                 field(TR, [](double e, auto x) { return JetVec{neg(e) * (1.0 + x[0] * x[0])}; }, "exp(-1/eps)(1+x^2)"),
                 K11, true, 0});
  out.push_back({"exp(-1/eps)/eps^3 sin on S1", S.S1,
                 field(TS, [](double e, auto x) { return JetVec{neg(e) / (e * e * e) * sin(x[0])}; }, "exp(-1/eps)sin/eps^3"),
                 KS, true, 0});
  out.push_back({"bump", S.R, field(TR, [](double, auto x) {
                   return JetVec{std::abs(x[0].value()) < 1.0 ? exp(-1.0 / (1.0 - x[0] * x[0])) : cst(x[0], 0.0)};
                 }, "bump"),
                 K11, false, 0});
  out.push_back({"eps cos", S.R, field(TR, [](double e, auto x) { return JetVec{e * cos(x[0])}; }, "eps cos"), K11,
                 false, 1});
  out.push_back({"eps^2(1+sin/2) on S1", S.S1,
                 field(TS, [](double e, auto x) { return JetVec{e * e * (1.0 + 0.5 * sin(x[0]))}; }, "eps^2(1+sin/2)"),
                 KS, false, 2});
  return out;
}

std::vector<VBInstance> vbpoint_instances(const Config& cfg, int count, std::uint64_t seed) {
  const auto& S = spaces();
  std::mt19937_64 rng(seed);
  auto uni = [&rng](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  std::vector<VBInstance> out;
  for (int i = 0; i < count; ++i) {
    const int kind = i % 4;
    Manifold M = kind == 0 ? S.R : kind == 1 ? S.S1 : kind == 2 ? S.S2 : S.R;
    BundlePtr B = kind == 3 ? VectorBundle::trivial(S.R, 2) : VectorBundle::tangent(M);
    const int n = M.atlas->dim(), m = B->fiber_dim();
    Vec c(n), b(n);
    for (int j = 0; j < n; ++j) {
      c[j] = kind == 1 ? uni(-2.5, 2.5) : uni(-0.8, 0.8);
      b[j] = uni(-1, 1);
    }
    Vec f0(m), f1(m), g0(m), g1(m);
    for (int j = 0; j < m; ++j) {
      f0[j] = uni(-1, 1);
      f1[j] = uni(-1, 1);
      g0[j] = uni(-1, 1);
      g1[j] = uni(-1, 1);
    }
    const double fa = std::floor(uni(0, 3)), ga = std::floor(uni(0, 3));
    const double r0 = uni(-2, 2), r1 = uni(-1, 1), s0 = uni(-2, 2);
    auto e_at = [c, f0, f1, fa](double e) {
      Vec f(f0.size());
      for (std::size_t j = 0; j < f.size(); ++j) f[j] = f0[j] + f1[j] * std::pow(e, -fa);
      return BundlePoint{Point{0, c}, f};
    };
    auto e2_at = [c, b, g0, g1, ga](double e) {
      Vec x = c, f(g0.size());
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += b[j] * neg(e);
      for (std::size_t j = 0; j < f.size(); ++j) f[j] = g0[j] * std::cos(e) + g1[j] * std::pow(e, -ga);
      return BundlePoint{Point{0, x}, f};
    };
    const std::string name = "instance " + std::to_string(i) + " over " + M.atlas->name();
    auto e = VBPoint::from_net(B, e_at, cfg, "e" + std::to_string(i));
    auto e2 = VBPoint::from_net(B, e2_at, cfg, "f" + std::to_string(i));
    GenNumber r([r0, r1](double eps) { return r0 + r1 / eps; }, "r");
    GenNumber s([s0](double eps) { return s0 * (1.0 + eps); }, "s");
    std::optional<VBHomNet> hom;
    if (kind == 0) {
      hom = tangent(real_net(S.R, S.R, [](double, const Jet& x) { return sin(x); }, "sin"), B, B);
    } else if (kind == 1) {
      hom = tangent(s1_net(S.S1, S.S1, [](double, const Jet& x) { return x + 0.3; }, "rot"), B, B);
    } else if (kind == 2) {
      hom = tangent(MapNet(S.S2.atlas, S.S2.atlas,
                           [](double, int a, std::span<const Jet> x) -> std::optional<ChartJets> {
                             return ChartJets{a, {x[0] * 1.5, x[1]}};
                           },
                           "stretch"),
                    B, B);
    } else {
      hom = VBHomNet(B, B,
                     [](double eps, int, std::span<const Jet> x) -> std::optional<VBHomValue> {
                       JetMatrix A(2, 2, cst(x[0], 0.0));
                       A(0, 0) = cst(x[0], 1.0);
                       A(0, 1) = x[0] / eps;
                       A(1, 1) = cst(x[0], 2.0);
                       return VBHomValue{ChartJets{0, {x[0]}}, A};
                     },
                     "shear");
    }
    out.push_back({name, M, B, *hom, e, e2, r, s});
  }
  return out;
}

std::vector<Verdict> check_vbpoint_instance(const VBInstance& in, const Config& cfg) {
  const auto& g = *in.base.metric;
  std::vector<Verdict> out;
  auto fa = align_representative(in.e2, in.e.base(), g, cfg);
  auto v = vbpoints_equal(fa, in.e2, g, cfg);
  v.label = "align(f) = f";
  out.push_back(v);

  auto sum = fiber_combine(in.e, fa, in.r, cfg);
  auto lhs = vbhom_eval(in.hom, sum, cfg);
  auto rhs = fiber_combine(vbhom_eval(in.hom, in.e, cfg), vbhom_eval(in.hom, fa, cfg), in.r, cfg);
  v = vbpoints_equal(lhs, rhs, g, cfg);
  v.label = "A(e + r f) = A e + r A f";
  out.push_back(v);

  auto twice = fiber_combine(sum, fa, in.s, cfg);
  auto once = fiber_combine(in.e, fa, in.r + in.s, cfg);
  v = vbpoints_equal(twice, once, g, cfg);
  v.label = "(e + r f) + s f = e + (r + s) f";
  out.push_back(v);

  v = vbpoints_equal(fiber_combine(in.e, in.e, GenNumber::constant(-1.0), cfg), VBPoint::zero_over(in.bundle, in.e.base(), "0"),
                     g, cfg);
  v.label = "e - e = 0";
  out.push_back(v);

  v = vbpoints_equal(fiber_combine(in.e, fa, GenNumber::constant(0.0), cfg), in.e, g, cfg);
  v.label = "e + 0 f = e";
  out.push_back(v);
  return out;
}

namespace {

std::vector<Expectation> run_net_entry(const std::string& name, const Config& cfg, Status cb, Status mod, Status single,
                                       const std::string& oracle) {
  const auto n = *find_gallery_net(name, cfg);
  std::vector<Expectation> out;
  out.push_back(expect("check-cbounded", cb, oracle, check_cbounded(n.net, n.K, cfg).verdict));
  out.push_back(expect("check-moderate", mod, oracle, check_moderate(n.net, n.K, cfg)));
  if (cb == Status::Pass) out.push_back(expect("check-single-chart", single, oracle, check_single_chart(n.net, n.K, cfg).verdict));
  return out;
}

Verdict closed_form(const std::string& label, std::function<double(double)> f, const Config& cfg) {
  SupSeries s;
  s.context = label;
  for (double e : EpsGrid(cfg.eps_grid).values()) s.add(e, f(e));
  auto v = judge_moderate(s, cfg);
  v.label = label;
  return v;
}

std::vector<Expectation> entry_sigma_sin(const Config& cfg) {
  auto out = run_net_entry("sigma_sin", cfg, Status::Pass, Status::Pass, Status::Pass, "smooth map, eps independent");
  const auto n = *find_gallery_net("sigma_sin", cfg);
  out.push_back(expect("check-equiv(sigma_sin, sigma_sin)", Status::Pass, "identical nets",
                       check_equiv(n.net, n.net, {n.K}, *n.dst.metric, cfg)));
  return out;
}

std::vector<Expectation> entry_epsilon(const Config& cfg) {
  auto out = run_net_entry("epsilon_into_0_2", cfg, Status::Fail, Status::Fail, Status::Fail,
                           "u_eps = eps reaches the boundary point 0 of (0,2)");
  const auto psi = *find_gallery_net("psi_epsilon", cfg);
  auto v = judge_moderate(local_sup_series(psi.net, psi.K, 0, 0, 0, cfg), cfg);
  v.label = "psi(u_eps) k=0";
  out.push_back(expect("judge-moderate(psi_epsilon)", Status::Fail, "sup = exp(1/eps) beats every eps^-N", v));
  return out;
}

std::vector<Expectation> entry_heaviside(const Config& cfg) {
  auto out = run_net_entry("heaviside_tanh", cfg, Status::Pass, Status::Pass, Status::Pass,
                           "sup|h'| = (1+eps)(1+1/eps)/2 grows like 1/eps");
  out.push_back(expect("closed form sup|h'|", Status::Pass, "N = 1",
                       closed_form("(1+eps)(1+1/eps)/2", [](double e) { return (1 + e) * (1 + 1 / e) / 2; }, cfg)));
  return out;
}

std::vector<Expectation> entry_s1_jump(const Config& cfg) {
  return run_net_entry("s1_jump", cfg, Status::Pass, Status::Pass, Status::Pass,
                       "exp(i pi h_eps) is moderate and lies in one angle chart over [-1,1]");
}

std::vector<Expectation> entry_winder(const Config& cfg) {
  return run_net_entry("winder", cfg, Status::Pass, Status::Pass, Status::Fail,
                       "exp(i x/eps) sweeps all of S^1, so no single chart holds the tail images");
}

std::vector<Expectation> entry_perturbations(const Config& cfg) {
  std::vector<Expectation> out;
  for (const auto& p : equivalence_corpus(cfg)) {
    const auto& h = *p.dst.metric;
    const Status want = pass_if(p.equivalent);
    const std::string oracle = p.equivalent ? "difference is O(exp(-1/eps))"
                                            : "difference is of exact order eps^" + std::to_string(int(p.defect_order));
    auto v0 = check_equiv0(p.u, p.v, p.K, h, cfg);
    out.push_back(expect("check-equiv0 " + p.name, want, oracle, v0));
    out.push_back(expect("routes agree " + p.name, Status::Pass, "metric and chart routes coincide",
                         flag("routes-agree", p.name, routes_agree(v0), routes_agree(v0) ? "agree" : "disagree")));
    out.push_back(expect("check-equiv " + p.name, want, oracle, check_equiv(p.u, p.v, {p.K}, h, cfg)));
  }
  return out;
}

std::vector<Expectation> entry_points(const Config& cfg) {
  const auto& S = spaces();
  std::vector<Expectation> out;
  auto pt = [&](const Manifold& M, std::function<Vec(double)> at, std::string tag) {
    return moving_point(M, std::move(at), cfg, std::move(tag));
  };
  auto eq = [&](const std::string& label, const Manifold& M, const GenPoint& p, const GenPoint& q, bool want,
                const std::string& oracle) {
    auto v = points_equal(p, q, *M.metric, cfg);
    out.push_back(expect(label, pass_if(want), oracle, v));
  };
  auto p = pt(S.R, [](double) { return Vec{0.5}; }, "0.5");
  auto q = pt(S.R, [](double e) { return Vec{0.5 + neg(e)}; }, "0.5+exp(-1/eps)");
  auto r = pt(S.R, [](double e) { return Vec{0.5 + e}; }, "0.5+eps");
  eq("points-equal R p=p", S.R, p, p, true, "reflexive");
  eq("points-equal R negligible shift", S.R, p, q, true, "shift exp(-1/eps)");
  eq("points-equal R eps shift", S.R, p, r, false, "shift eps");
  auto a = pt(S.S1, [](double e) { return Vec{3.0 + neg(e)}; }, "A:3+exp(-1/eps)");
  auto b = GenPoint::from_net(S.S1.atlas, [](double) { return Point{1, {3.0}}; }, cfg, "B:3");
  auto c = pt(S.S1, [](double e) { return Vec{3.0 - e * e}; }, "A:3-eps^2");
  eq("points-equal S1 across charts", S.S1, a, b, true, "same angle in charts A and B");
  eq("points-equal S1 eps^2 shift", S.S1, b, c, false, "shift eps^2");
  auto n1 = pt(S.S2, [](double e) { return Vec{0.3, -0.2 + neg(e)}; }, "N(0.3,-0.2+exp(-1/eps))");
  auto n2 = pt(S.S2, [](double) { return Vec{0.3, -0.2}; }, "N(0.3,-0.2)");
  auto n3 = pt(S.S2, [](double e) { return Vec{0.3 + std::sqrt(e), -0.2}; }, "N(0.3+sqrt(eps),-0.2)");
  eq("points-equal S2 negligible shift", S.S2, n1, n2, true, "shift exp(-1/eps)");
  eq("points-equal S2 sqrt(eps) shift", S.S2, n2, n3, false, "shift eps^(1/2)");

  for (const auto& pair : equivalence_corpus(cfg)) {
    const auto& h = *pair.dst.metric;
    auto sep = separate_by_points(pair.u, pair.v, pair.K, h, cfg);
    Verdict v = sep ? sep->evaluation
                    : flag("separate-by-points", pair.name, true, "no separating point: nets are equivalent");
    out.push_back(expect("separate-by-points " + pair.name, pass_if(pair.equivalent),
                         pair.equivalent ? "no witness" : "witness with defect order " + std::to_string(int(pair.defect_order)),
                         v));
    if (pair.equivalent && pair.src.atlas->dim() == 1) {
      const double mid = 0.5 * (pair.K.pieces[0].box.lo[0] + pair.K.pieces[0].box.hi[0]);
      auto x = pt(pair.src, [mid](double e) { return Vec{mid + 0.25 * e}; }, "mid+eps/4");
      auto y = pt(pair.src, [mid](double e) { return Vec{mid + 0.25 * e + neg(e)}; }, "mid+eps/4+exp(-1/eps)");
      auto ux = eval_at(pair.u, x, cfg), vy = eval_at(pair.v, y, cfg);
      out.push_back(expect("u(p) = v(q) " + pair.name, Status::Pass, "representative independence",
                           points_equal(ux, vy, h, cfg)));
    }
  }
  return out;
}

std::vector<Expectation> entry_tangent(const Config& cfg) {
  const auto& S = spaces();
  auto TR = VectorBundle::tangent(S.R);
  auto TS = VectorBundle::tangent(S.S1);
  std::vector<Expectation> out;
  const auto sig = *find_gallery_net("sigma_sin", cfg);
  const auto jump = *find_gallery_net("s1_jump", cfg);
  out.push_back(expect("vbhom-moderate T(sigma_sin)", Status::Pass, "cos is smooth",
                       check_vbhom_moderate(tangent(sig.net, TR, TR), sig.K, cfg)));
  out.push_back(expect("vbhom-moderate T(s1_jump)", Status::Pass, "pi h' grows like 1/eps",
                       check_vbhom_moderate(tangent(jump.net, TR, TS), jump.K, cfg)));
  const auto corpus = equivalence_corpus(cfg);
  for (const auto& p : corpus) {
    if (p.src.atlas->dim() != 1 || p.dst.atlas->name() != "circle") continue;
    auto v = check_vbhom_equiv(tangent(p.u, TR, TS), tangent(p.v, TR, TS), p.K, *S.S1.metric, cfg);
    out.push_back(expect("vbhom-equiv T " + p.name, pass_if(p.equivalent), "tangents of the corpus pair", v));
  }
  auto norm = judge_moderate(tangent_norm_series(jump.net, jump.K, *S.R.metric, *S.S1.metric, cfg), cfg);
  norm.label = "|T s1_jump|";
  out.push_back(expect("tangent norm s1_jump", Status::Pass, "|Tu| = pi sup|h'| ~ 1/eps", norm));

  for (const auto& inst : vbpoint_instances(cfg, 4, cfg.seed))
    for (auto& v : check_vbpoint_instance(inst, cfg))
      out.push_back(expect(inst.name + ": " + v.label, Status::Pass, "vb-point module axioms", v));

  for (const auto& sc : section_corpus(cfg)) {
    auto w = section_zero_witness(sc.s, sc.K, *sc.base.metric, cfg);
    Verdict v = w ? w->evaluation : flag("section-zero-witness", sc.name, true, "no witness: section is negligible");
    out.push_back(expect("section-zero-witness " + sc.name, pass_if(sc.negligible),
                         sc.negligible ? "negligible section" : "sup decays like eps^" + std::to_string(int(sc.slope)), v));
  }
  return out;
}

std::vector<Expectation> entry_tensor(const Config& cfg) {
  std::vector<Expectation> out;
  for (const auto& t : tensor_corpus(cfg)) {
    auto a = tensor_insert(t.t, t.omegas, t.xis, t.p);
    auto b = tensor_insert(t.t, t.omegas2, t.xis2, t.p);
    out.push_back(expect("tensor-insert " + t.name, pass_if(t.agree),
                         t.agree ? "arguments agree at p up to exp(-1/eps)" : "arguments differ by eps at p",
                         numbers_equal(a, b, cfg)));
  }
  return out;
}

std::vector<Expectation> entry_composition(const Config& cfg) {
  std::vector<Expectation> out;
  for (const auto& c : composition_corpus(cfg)) {
    const auto& h = *c.Z.metric;
    auto gf = compose(c.g, c.f, cfg, {c.K});
    out.push_back(expect("compose " + c.name, Status::Pass, "closed form of g o f",
                         check_equiv(gf, c.gf, {c.K}, h, cfg)));
    auto gfp = compose(c.g, c.f_perturbed, cfg, {c.K});
    out.push_back(expect("compose perturbed " + c.name, Status::Pass, "f perturbed by exp(-1/eps)",
                         check_equiv0(gfp, gf, c.K, h, cfg)));
  }
  return out;
}

std::vector<GalleryEntry> make_gallery() {
  std::vector<GalleryEntry> g = {
      {"composition", "compose(g, f) against the closed form of g o f", entry_composition},
      {"epsilon_into_0_2", "u_eps = eps into (0,2) and its psi transform exp(1/eps)", entry_epsilon},
      {"heaviside_tanh", "regularized sign h_eps", entry_heaviside},
      {"negligible_perturbations", "equivalent and non-equivalent net pairs", entry_perturbations},
      {"point_nets", "generalized points, point values and separation", entry_points},
      {"s1_jump", "exp(i pi h_eps): R -> S^1", entry_s1_jump},
      {"sigma_sin", "smooth map sin", entry_sigma_sin},
      {"tangent_bundle", "tangent maps, vb-points and sections", entry_tangent},
      {"tensor_insertion", "pointwise insertion into tensor fields", entry_tensor},
      {"winder", "exp(i x/eps): R -> S^1", entry_winder},
  };
  std::sort(g.begin(), g.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return g;
}

}  // namespace

const std::vector<GalleryEntry>& gallery() {
  static const std::vector<GalleryEntry> g = make_gallery();
  return g;
}

json gallery_list() {
  json out = json::array();
  for (const auto& e : gallery()) out.push_back({{"name", e.name}, {"description", e.description}});
  return out;
}

GalleryRun gallery_run(const Config& cfg, const std::vector<std::string>& names) {
  validate_config(cfg);
  std::vector<const GalleryEntry*> selected;
  const std::set<std::string> wanted(names.begin(), names.end());
  for (const auto& e : gallery())
    if (wanted.empty() || wanted.count(e.name)) selected.push_back(&e);
  for (const auto& n : wanted)
    if (std::none_of(selected.begin(), selected.end(), [&](const GalleryEntry* e) { return e->name == n; }))
      throw Error(ErrorCode::InvalidArgument, "unknown gallery entry '" + n + "'");

  GalleryRun run;
  run.results.resize(selected.size());
  std::vector<std::string> errors(selected.size());
  parallel_for(selected.size(), [&](std::size_t i) {
    try {
      run.results[i] = selected[i]->run(cfg);
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  });

  json entries = json::array();
  for (std::size_t i = 0; i < selected.size(); ++i) {
    json entry;
    entry["name"] = selected[i]->name;
    entry["description"] = selected[i]->description;
    bool match = errors[i].empty();
    json checks = json::array();
    for (const auto& x : run.results[i]) {
      match = match && x.match();
      checks.push_back({{"label", x.label},
                        {"expected", to_string(x.expected)},
                        {"actual", to_string(x.actual.status)},
                        {"match", x.match()},
                        {"oracle", x.oracle},
                        {"verdict", verdict_json(x.actual)}});
    }
    if (!errors[i].empty()) entry["error"] = errors[i];
    entry["match"] = match;
    entry["checks"] = std::move(checks);
    run.all_match = run.all_match && match;
    entries.push_back(std::move(entry));
  }
  run.record["config"] = config_json(cfg);
  run.record["all_match"] = run.all_match;
  run.record["entries"] = std::move(entries);
  return run;
}

}  // namespace gcm
