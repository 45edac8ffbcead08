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

#include "gcm/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "gcm/error.hpp"

namespace gcm {

namespace {

void enumerate(int nvars, int degree, std::vector<int>& cur, int pos,
               std::vector<std::vector<int>>& out) {
  if (pos == nvars - 1) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (int d = degree; d >= 0; --d) {
    cur[pos] = d;
    enumerate(nvars, degree - d, cur, pos + 1, out);
  }
}

bool is_scalar(const std::shared_ptr<const JetLayout>& l) {
  return !l || l->size() == 1;
}

}  // namespace

JetLayout::JetLayout(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 0 || order < 0) throw Error(ErrorCode::InvalidArgument, "negative jet dimensions");
  if (nvars == 0) {
    degree_.push_back(0);
    index_.push_back({});
  } else {
    for (int d = 0; d <= order; ++d) {
      std::vector<std::vector<int>> level;
      std::vector<int> cur(nvars, 0);
      enumerate(nvars, d, cur, 0, level);
      for (auto& a : level) {
        degree_.push_back(d);
        index_.push_back(std::move(a));
      }
    }
  }
  factorial_.resize(size());
  for (std::size_t i = 0; i < size(); ++i) {
    double f = 1.0;
    for (int a : index_[i])
      for (int t = 2; t <= a; ++t) f *= t;
    factorial_[i] = f;
  }
  std::vector<int> sum(nvars);
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (degree_[i] + degree_[j] > order_) continue;
      for (int v = 0; v < nvars; ++v) sum[v] = index_[i][v] + index_[j][v];
      products_.push_back({static_cast<int>(i), static_cast<int>(j), find(sum)});
    }
  }
}

std::shared_ptr<const JetLayout> JetLayout::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  if (nvars == 0) order = 0;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot = std::make_shared<const JetLayout>(nvars, order);
  return slot;
}

int JetLayout::find(std::span<const int> alpha) const {
  int deg = 0;
  for (int a : alpha) deg += a;
  if (deg > order_) return -1;
  // Entries are grouped by degree; a linear scan inside the group is enough
  // for the small layouts used here.
  for (std::size_t i = 0; i < size(); ++i) {
    if (degree_[i] != deg) continue;
    if (std::equal(alpha.begin(), alpha.end(), index_[i].begin())) return static_cast<int>(i);
  }
  return -1;
}

Jet::Jet(std::shared_ptr<const JetLayout> layout, double value)
    : layout_(std::move(layout)), coeffs_(layout_->size(), 0.0) {
  coeffs_[0] = value;
}

Jet Jet::constant(double value) { return Jet(JetLayout::get(0, 0), value); }

Jet Jet::variable(std::shared_ptr<const JetLayout> layout, int i, double x0) {
  Jet j(layout, x0);
  if (layout->order() >= 1) {
    std::vector<int> alpha(layout->nvars(), 0);
    alpha[i] = 1;
    j.coeffs_[layout->find(alpha)] = 1.0;
  }
  return j;
}

double Jet::partial(std::span<const int> alpha) const {
  if (!layout_) return 0.0;
  const int i = layout_->find(alpha);
  if (i < 0) return 0.0;
  return coeffs_[i] * layout_->factorial(i);
}

double Jet::max_partial(int k) const {
  double m = 0.0;
  if (!layout_) return k == 0 ? 0.0 : m;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (layout_->degree(i) == k) m = std::max(m, std::abs(coeffs_[i] * layout_->factorial(i)));
  return m;
}

Jet Jet::derivative(int var) const {
  if (!layout_ || layout_->order() == 0 || var >= layout_->nvars())
    return Jet(JetLayout::get(nvars(), 0), 0.0);
  auto lower = JetLayout::get(layout_->nvars(), layout_->order() - 1);
  Jet out(lower, 0.0);
  std::vector<int> up;
  for (std::size_t i = 0; i < lower->size(); ++i) {
    up = lower->multi_index(i);
    up[var] += 1;
    const int src = layout_->find(up);
    out.coeffs_[i] = coeffs_[src] * up[var];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  if (!layout_ || order >= layout_->order()) return *this;
  auto lower = JetLayout::get(layout_->nvars(), order);
  Jet out(lower, 0.0);
  // The degree-ordered layout makes the lower layout a prefix.
  std::copy_n(coeffs_.begin(), lower->size(), out.coeffs_.begin());
  return out;
}

Jet Jet::shifted(double delta) const {
  Jet out = *this;
  if (out.coeffs_.empty()) return Jet::constant(delta);
  out.coeffs_[0] += delta;
  return out;
}

void Jet::adopt(const Jet& o) {
  if (is_scalar(layout_) && !is_scalar(o.layout_)) {
    const double v = value();
    layout_ = o.layout_;
    coeffs_.assign(layout_->size(), 0.0);
    coeffs_[0] = v;
  } else if (!layout_) {
    layout_ = o.layout_ ? o.layout_ : JetLayout::get(0, 0);
    coeffs_.assign(layout_->size(), 0.0);
  }
}

Jet& Jet::operator+=(const Jet& o) {
  adopt(o);
  if (is_scalar(o.layout_)) {
    coeffs_[0] += o.value();
    return *this;
  }
  if (o.layout_ != layout_) throw Error(ErrorCode::InvalidArgument, "jet layout mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  adopt(o);
  if (is_scalar(o.layout_)) {
    coeffs_[0] -= o.value();
    return *this;
  }
  if (o.layout_ != layout_) throw Error(ErrorCode::InvalidArgument, "jet layout mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Jet& Jet::operator+=(double c) {
  if (coeffs_.empty()) *this = Jet::constant(0.0);
  coeffs_[0] += c;
  return *this;
}

Jet& Jet::operator*=(double c) {
  for (double& v : coeffs_) v *= c;
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  *this = *this * o;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (is_scalar(a.layout_)) return b * a.value();
  if (is_scalar(b.layout_)) return a * b.value();
  if (a.layout_ != b.layout_) throw Error(ErrorCode::InvalidArgument, "jet layout mismatch");
  Jet out(a.layout_, 0.0);
  for (const auto& t : a.layout_->products()) {
    const double x = a.coeffs_[t.i], y = b.coeffs_[t.j];
    if ((x == 0.0 && !std::isnan(y)) || (y == 0.0 && !std::isnan(x))) continue;
    out.coeffs_[t.k] += x * y;
  }
  return out;
}

Jet operator-(double c, const Jet& a) { return (-a) + c; }
Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }
Jet operator/(double c, const Jet& a) { return recip(a) * c; }

Jet compose_series(const Jet& a, std::span<const double> series) {
  const int K = a.order();
  if (K == 0 || a.coeffs_.size() == 1) {
    Jet out = a;
    if (out.coeffs_.empty()) out = Jet::constant(0.0);
    out.coeffs_[0] = series[0];
    return out;
  }
  Jet h = a;
  h.coeffs_[0] = 0.0;
  Jet out(a.layout_, series[K]);
  for (int j = K - 1; j >= 0; --j) {
    out = out * h;
    out.coeffs_[0] += series[j];
  }
  return out;
}

namespace {

std::vector<double> recip_series(std::span<const double> q, int K) {
  std::vector<double> r(K + 1, 0.0);
  r[0] = 1.0 / q[0];
  for (int n = 1; n <= K; ++n) {
    double s = 0.0;
    for (int i = 1; i <= n && i < static_cast<int>(q.size()); ++i) s += q[i] * r[n - i];
    r[n] = -s / q[0];
  }
  return r;
}

}  // namespace

Jet exp(const Jet& a) {
  const int K = a.order();
  std::vector<double> s(K + 1);
  double f = std::exp(a.value());
  for (int j = 0; j <= K; ++j) {
    s[j] = f;
    f /= (j + 1);
  }
  return compose_series(a, s);
}

Jet log(const Jet& a) {
  const int K = a.order();
  const double x = a.value();
  if (!(x > 0.0)) throw Error(ErrorCode::Domain, "log of non-positive value");
  std::vector<double> s(K + 1);
  s[0] = std::log(x);
  double p = x;
  for (int j = 1; j <= K; ++j, p *= x) s[j] = ((j % 2) ? 1.0 : -1.0) / (j * p);
  return compose_series(a, s);
}

Jet sin(const Jet& a) {
  const int K = a.order();
  const double sv = std::sin(a.value()), cv = std::cos(a.value());
  const double cyc[4] = {sv, cv, -sv, -cv};
  std::vector<double> s(K + 1);
  double fact = 1.0;
  for (int j = 0; j <= K; ++j) {
    if (j > 0) fact *= j;
    s[j] = cyc[j % 4] / fact;
  }
  return compose_series(a, s);
}

Jet cos(const Jet& a) {
  const int K = a.order();
  const double sv = std::sin(a.value()), cv = std::cos(a.value());
  const double cyc[4] = {cv, -sv, -cv, sv};
  std::vector<double> s(K + 1);
  double fact = 1.0;
  for (int j = 0; j <= K; ++j) {
    if (j > 0) fact *= j;
    s[j] = cyc[j % 4] / fact;
  }
  return compose_series(a, s);
}

Jet tanh(const Jet& a) {
  // T' = 1 - T^2, solved coefficient by coefficient.
  const int K = a.order();
  std::vector<double> t(K + 1, 0.0);
  t[0] = std::tanh(a.value());
  for (int j = 0; j < K; ++j) {
    double sq = 0.0;
    for (int i = 0; i <= j; ++i) sq += t[i] * t[j - i];
    t[j + 1] = ((j == 0 ? 1.0 : 0.0) - sq) / (j + 1);
  }
  return compose_series(a, t);
}

Jet atan(const Jet& a) {
  const int K = a.order();
  const double x = a.value();
  const double q[3] = {1.0 + x * x, 2.0 * x, 1.0};
  auto r = recip_series(q, K);
  std::vector<double> s(K + 1);
  s[0] = std::atan(x);
  for (int j = 1; j <= K; ++j) s[j] = r[j - 1] / j;
  return compose_series(a, s);
}

Jet pow(const Jet& a, double p) {
  const int K = a.order();
  const double x = a.value();
  std::vector<double> s(K + 1);
  s[0] = std::pow(x, p);
  double binom = 1.0;
  for (int j = 1; j <= K; ++j) {
    if (x == 0.0) throw Error(ErrorCode::Domain, "pow derivative at zero");
    binom *= (p - (j - 1)) / j;
    s[j] = s[0] * binom / std::pow(x, j);
  }
  return compose_series(a, s);
}

Jet sqrt(const Jet& a) {
  if (a.value() < 0.0) throw Error(ErrorCode::Domain, "sqrt of negative value");
  return pow(a, 0.5);
}

Jet recip(const Jet& a) {
  const int K = a.order();
  const double x = a.value();
  if (x == 0.0) throw Error(ErrorCode::Domain, "division by zero jet");
  std::vector<double> s(K + 1);
  double p = 1.0 / x;
  for (int j = 0; j <= K; ++j, p /= -x) s[j] = p;
  return compose_series(a, s);
}

JetVec seed(std::span<const double> x0, int order) {
  auto layout = JetLayout::get(static_cast<int>(x0.size()), order);
  JetVec out;
  out.reserve(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) out.push_back(Jet::variable(layout, static_cast<int>(i), x0[i]));
  return out;
}

std::vector<double> values(std::span<const Jet> v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].value();
  return out;
}

Jet compose_taylor(const Jet& p, std::span<const Jet> inner) {
  const auto& L = p.layout();
  if (!L || L->size() == 1) {
    Jet out = inner.empty() ? Jet::constant(0.0) : Jet(inner[0].layout() ? inner[0].layout() : JetLayout::get(0, 0), 0.0);
    out.coeffs()[0] = p.value();
    return out;
  }
  if (static_cast<int>(inner.size()) != L->nvars())
    throw Error(ErrorCode::InvalidArgument, "compose_taylor: dimension mismatch");
  const int K = L->order();
  // powers[i][e] = (inner_i - x0_i)^e
  std::vector<std::vector<Jet>> powers(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) {
    Jet d = inner[i].shifted(-inner[i].value());
    powers[i].push_back(Jet::constant(1.0));
    for (int e = 1; e <= K; ++e) powers[i].push_back(powers[i].back() * d);
  }
  Jet out = Jet::constant(0.0);
  for (std::size_t k = 0; k < L->size(); ++k) {
    const double c = p.coeffs()[k];
    if (c == 0.0) continue;
    Jet term = Jet::constant(c);
    const auto& alpha = L->multi_index(k);
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i] > 0) term = term * powers[i][alpha[i]];
    out += term;
  }
  return out;
}

}  // namespace gcm
