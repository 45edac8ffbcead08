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

#include "gcm/local_map.hpp"

#include <cmath>

#include "gcm/error.hpp"

namespace gcm {

namespace {

constexpr double kStencil[4][2] = {{-2.0, 1.0}, {-1.0, -8.0}, {1.0, 8.0}, {2.0, -1.0}};

double nested_partial(const ValueFn& fn, Vec& x, std::vector<int>& alpha, int comp, double h) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    alpha[i] -= 1;
    const double xi = x[i];
    double acc = 0.0;
    for (const auto& s : kStencil) {
      x[i] = xi + s[0] * h;
      acc += s[1] * nested_partial(fn, x, alpha, comp, h);
    }
    x[i] = xi;
    alpha[i] += 1;
    return acc / (12.0 * h);
  }
  return fn(x)[comp];
}

int jet_order(std::span<const Jet> x) {
  int k = 0;
  for (const auto& j : x) k = std::max(k, j.order());
  return k;
}

}  // namespace

LocalMap LocalMap::exact(int in_dim, int out_dim, JetFn fn, DomainFn domain) {
  LocalMap m;
  m.in_dim_ = in_dim;
  m.out_dim_ = out_dim;
  m.exact_ = true;
  m.fn_ = std::move(fn);
  m.domain_ = std::move(domain);
  return m;
}

LocalMap LocalMap::finite_difference(int in_dim, int out_dim, ValueFn fn, DomainFn domain, int max_order) {
  LocalMap m;
  m.in_dim_ = in_dim;
  m.out_dim_ = out_dim;
  m.exact_ = false;
  m.domain_ = std::move(domain);
  m.fn_ = [fn = std::move(fn), out_dim, max_order](std::span<const Jet> x) {
    const int order = std::min(jet_order(x), max_order);
    const Vec x0 = values(x);
    JetVec taylor = fd_expand(fn, x0, out_dim, order);
    JetVec out;
    out.reserve(taylor.size());
    for (const auto& p : taylor) out.push_back(compose_taylor(p, x));
    return out;
  };
  return m;
}

LocalMap LocalMap::identity(int dim) {
  return exact(dim, dim, [](std::span<const Jet> x) { return JetVec(x.begin(), x.end()); });
}

Vec LocalMap::value(std::span<const double> x) const {
  JetVec in;
  in.reserve(x.size());
  for (double v : x) in.push_back(Jet::constant(v));
  return values(fn_(in));
}

JetVec LocalMap::expand(std::span<const double> x, int order) const {
  const JetVec s = seed(x, order);
  return fn_(s);
}

JetVec LocalMap::apply(std::span<const Jet> x) const {
  if (static_cast<int>(x.size()) != in_dim_)
    throw Error(ErrorCode::InvalidArgument, "local map input dimension mismatch");
  return fn_(x);
}

JetVec LocalMap::fd_expand(const ValueFn& fn, std::span<const double> x, int out_dim, int order) {
  const int n = static_cast<int>(x.size());
  auto layout = JetLayout::get(n, order);
  double norm = 0.0;
  for (double v : x) norm += v * v;
  const double h = 1e-4 * (1.0 + std::sqrt(norm));
  Vec xs(x.begin(), x.end());
  const Vec f0 = fn(xs);
  JetVec out;
  for (int c = 0; c < out_dim; ++c) {
    Jet j(layout, f0[c]);
    for (std::size_t k = 1; k < layout->size(); ++k) {
      std::vector<int> alpha = layout->multi_index(k);
      j.coeffs()[k] = nested_partial(fn, xs, alpha, c, h) / layout->factorial(k);
    }
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace gcm
