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

#include "gcm/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gcm/error.hpp"

namespace gcm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool usable(const Sample& s) { return std::isfinite(s.log_sup); }

Witness witness_of(const Sample& s) { return Witness{s.eps, s.location, s.log_sup}; }

const Sample* first_overflow(const SupSeries& s) {
  for (const auto& x : s.samples)
    if (x.overflow()) return &x;
  return nullptr;
}

const Sample& last_usable(const SupSeries& s, const OrderEstimate& e) {
  return s.samples[e.window_end - 1];
}

bool clean(const OrderEstimate& e, const Config& cfg) {
  return e.r2 >= cfg.r2_min || e.max_residual <= cfg.residual_tol;
}

Verdict base(const char* check, const SupSeries& s) {
  Verdict v;
  v.check = check;
  v.label = s.context;
  v.series = s;
  return v;
}

}  // namespace

EpsGrid::EpsGrid(EpsGridSpec s) : spec(s) {
  if (!(s.base > 0.0 && s.base < 1.0)) throw Error(ErrorCode::InvalidArgument, "eps grid base must lie in (0,1)");
  if (s.k_max < s.k_min) throw Error(ErrorCode::InvalidArgument, "eps grid k_max < k_min");
}

double EpsGrid::at(std::size_t i) const { return std::pow(spec.base, spec.k_min + static_cast<int>(i)); }

std::vector<double> EpsGrid::values() const {
  std::vector<double> v(size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = at(i);
  return v;
}

double EpsGrid::midpoint() const { return std::pow(spec.base, 0.5 * (spec.k_min + spec.k_max)); }

double Sample::value() const { return std::exp(log_sup); }

void SupSeries::add(double eps, double value, std::string location, bool empty) {
  if (std::isnan(value)) throw Error(ErrorCode::Domain, "NaN supremum at eps=" + std::to_string(eps));
  value = std::fabs(value);
  samples.push_back(Sample{eps, value == 0.0 ? -kInf : std::log(value), empty, std::move(location)});
}

void SupSeries::add_log(double eps, double log_value, std::string location) {
  if (std::isnan(log_value)) throw Error(ErrorCode::Domain, "NaN log supremum at eps=" + std::to_string(eps));
  samples.push_back(Sample{eps, log_value, false, std::move(location)});
}

std::size_t SupSeries::zero_count() const {
  return static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(), [](const Sample& s) { return s.zero(); }));
}

std::size_t SupSeries::empty_count() const {
  return static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(), [](const Sample& s) { return s.empty; }));
}

bool SupSeries::all_zero() const { return zero_count() == samples.size(); }

void SupSeries::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps samples must be positive");
    if (i > 0 && !(samples[i].eps < samples[i - 1].eps))
      throw Error(ErrorCode::InvalidArgument, "eps samples must be strictly decreasing");
  }
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "Pass";
    case Status::Fail: return "Fail";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const Verdict* Verdict::find(const std::string& l) const {
  if (label == l) return this;
  for (const auto& p : parts)
    if (const Verdict* f = p.find(l)) return f;
  return nullptr;
}

OrderEstimate fit_order(const SupSeries& series) {
  series.validate();
  const auto& S = series.samples;
  const std::size_t n = S.size();
  if (n < 6) throw Error(ErrorCode::TooFewSamples, "need at least 6 samples, got " + std::to_string(n));

  OrderEstimate e;
  e.dropped_zeros = series.zero_count();
  for (const auto& s : S) e.overflow_count += s.overflow() ? 1 : 0;

  // Exactly vanishing tail.
  bool tail_zero = true;
  for (std::size_t i = n / 2; i < n; ++i) tail_zero = tail_zero && S[i].zero();
  if (tail_zero) {
    e.slope = kInf;
    e.r2 = 1.0;
    e.tail_zero = true;
    e.window_begin = n / 2;
    e.window_end = n;
    e.min_step_slope = e.max_step_slope = kInf;
    return e;
  }

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (usable(S[i])) idx.push_back(i);
  if (idx.size() < 6)
    throw Error(ErrorCode::TooFewSamples, "need at least 6 finite positive samples, got " + std::to_string(idx.size()));
  std::vector<std::size_t> w(idx.end() - static_cast<std::ptrdiff_t>((idx.size() + 1) / 2), idx.end());
  e.window_begin = w.front();
  e.window_end = w.back() + 1;

  const double m = static_cast<double>(w.size());
  double sx = 0, sy = 0;
  for (auto i : w) {
    sx += std::log(S[i].eps);
    sy += S[i].log_sup;
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (auto i : w) {
    const double dx = std::log(S[i].eps) - mx, dy = S[i].log_sup - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  e.slope = sxy / sxx;
  e.intercept = my - e.slope * mx;
  double ssr = 0;
  for (auto i : w) {
    const double r = S[i].log_sup - (e.intercept + e.slope * std::log(S[i].eps));
    ssr += r * r;
    e.max_residual = std::max(e.max_residual, std::fabs(r));
  }
  e.r2 = syy <= 1e-24 * (1.0 + my * my) ? 1.0 : std::max(0.0, 1.0 - ssr / syy);

  e.min_step_slope = kInf;
  e.max_step_slope = -kInf;
  for (std::size_t j = 1; j < w.size(); ++j) {
    const auto& a = S[w[j - 1]];
    const auto& b = S[w[j]];
    const double s = (b.log_sup - a.log_sup) / (std::log(b.eps) - std::log(a.eps));
    e.min_step_slope = std::min(e.min_step_slope, s);
    e.max_step_slope = std::max(e.max_step_slope, s);
  }
  return e;
}

Verdict judge_moderate(const SupSeries& series, const Config& cfg) {
  Verdict v = base("moderate", series);
  if (const Sample* o = first_overflow(series)) {
    v.status = Status::Fail;
    v.witness = witness_of(*o);
    v.notes.push_back("sup overflows double precision");
    try {
      v.estimate = fit_order(series);
    } catch (const Error&) {
    }
    return v;
  }
  OrderEstimate e;
  try {
    e = fit_order(series);
  } catch (const Error& err) {
    v.notes.push_back(err.what());
    return v;
  }
  v.estimate = e;
  const double cap = -static_cast<double>(cfg.n_cap);
  if (e.tail_zero) {
    v.status = Status::Pass;
    v.order = 0.0;
    v.notes.push_back("tail is exactly zero");
    return v;
  }
  if (e.slope >= cap && (clean(e, cfg) || e.min_step_slope >= cap)) {
    v.status = Status::Pass;
    v.order = std::max(0.0, std::ceil(-e.slope - cfg.slope_tol));
  } else if (e.slope < cap && (clean(e, cfg) || e.max_step_slope <= cap)) {
    v.status = Status::Fail;
    v.witness = witness_of(last_usable(series, e));
    v.notes.push_back("growth faster than eps^-" + std::to_string(cfg.n_cap));
  } else {
    v.notes.push_back("fit quality below r2_min");
  }
  return v;
}

Verdict judge_negligible(const SupSeries& series, const Config& cfg, std::optional<int> m_probe) {
  Verdict v = base("negligible", series);
  const double m = m_probe.value_or(cfg.m_probe);
  if (series.all_zero()) {
    v.status = Status::Pass;
    v.notes.push_back("identically zero");
    OrderEstimate e;
    e.slope = kInf;
    e.tail_zero = true;
    e.window_end = series.samples.size();
    v.estimate = e;
    return v;
  }
  if (const Sample* o = first_overflow(series)) {
    v.status = Status::Fail;
    v.witness = witness_of(*o);
    v.notes.push_back("sup overflows double precision");
    return v;
  }
  OrderEstimate e;
  try {
    e = fit_order(series);
  } catch (const Error& err) {
    v.notes.push_back(err.what());
    return v;
  }
  v.estimate = e;
  if (e.tail_zero) {
    v.status = Status::Pass;
    v.notes.push_back("tail is exactly zero");
    return v;
  }
  v.order = std::floor(e.slope + cfg.slope_tol);
  if (e.slope >= m && (clean(e, cfg) || e.min_step_slope >= m)) {
    v.status = Status::Pass;
  } else if ((e.slope < m && clean(e, cfg)) || e.slope <= cfg.m_fail) {
    v.status = Status::Fail;
    v.witness = witness_of(last_usable(series, e));
    v.notes.push_back("decay slower than eps^" + std::to_string(static_cast<int>(m)));
  } else {
    v.notes.push_back("fit quality below r2_min");
  }
  return v;
}

Verdict judge_vanishing(const SupSeries& series, const Config& cfg) {
  Verdict v = base("vanishing", series);
  series.validate();
  const auto& S = series.samples;
  if (S.empty()) throw Error(ErrorCode::TooFewSamples, "empty series");
  const std::size_t t0 = S.size() - std::max<std::size_t>(1, S.size() / 3);
  double tmax = -kInf, tmin = kInf;
  const Sample* at_min = &S.back();
  for (std::size_t i = t0; i < S.size(); ++i) {
    tmax = std::max(tmax, S[i].log_sup);
    if (S[i].log_sup < tmin) {
      tmin = S[i].log_sup;
      at_min = &S[i];
    }
  }
  std::optional<OrderEstimate> e;
  try {
    e = fit_order(series);
    v.estimate = e;
  } catch (const Error& err) {
    v.notes.push_back(err.what());
  }
  const double tol = std::log(cfg.vanish_tol);
  if (tmax <= tol) {
    v.status = Status::Pass;
    v.notes.push_back("tail below vanish_tol");
  } else if (e && e->slope > cfg.slope_tol && clean(*e, cfg)) {
    v.status = Status::Pass;
  } else if (tmin > tol && (!e || e->slope <= cfg.slope_tol)) {
    v.status = Status::Fail;
    v.witness = witness_of(*at_min);
    v.notes.push_back("tail stays above vanish_tol");
  }
  return v;
}

Verdict conjunction(std::string check, std::vector<Verdict> parts, Worst worst) {
  Verdict v;
  v.check = std::move(check);
  bool all_pass = !parts.empty();
  const Verdict* failing = nullptr;
  const Verdict* worst_part = nullptr;
  for (const auto& p : parts) {
    all_pass = all_pass && p.pass();
    if (p.fail() && !failing) failing = &p;
    if (!p.estimate) continue;
    if (!worst_part || !worst_part->estimate) {
      worst_part = &p;
      continue;
    }
    if (p.estimate->slope < worst_part->estimate->slope) worst_part = &p;
  }
  if (failing) {
    v.status = Status::Fail;
    v.witness = failing->witness;
    v.notes.push_back("failed: " + failing->label);
  } else if (all_pass) {
    v.status = Status::Pass;
  } else {
    v.status = Status::Inconclusive;
  }
  if (worst_part) {
    v.estimate = worst_part->estimate;
    v.order = worst_part->order;
  }
  if (v.status == Status::Pass) {
    double o = 0;
    bool any = false;
    for (const auto& p : parts)
      if (p.order) {
        o = any ? (worst == Worst::MostNegativeSlope ? std::max(o, *p.order) : std::min(o, *p.order)) : *p.order;
        any = true;
      }
    if (any) v.order = o;
  }
  v.parts = std::move(parts);
  return v;
}

}  // namespace gcm
