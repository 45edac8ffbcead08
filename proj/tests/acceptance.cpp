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

// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "gallery.hpp"
#include "gcm/error.hpp"
#include "gcm/gcm.h"

using namespace gcm;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double slope_of(const Verdict& v) { return v.estimate ? v.estimate->slope : std::nan(""); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

bool slopes_match(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= tol;
}

/// Fitted slope of a series, +inf for identically zero series.
double series_slope(const SupSeries& s) {
  try {
    return fit_order(s).slope;
  } catch (const Error&) {
    return std::nan("");
  }
}

Outcome criterion1(const Config& cfg) {
  Outcome o;
  const auto t0 = Clock::now();
  const auto u = *find_gallery_net("epsilon_into_0_2", cfg);
  const auto cb = check_cbounded(u.net, u.K, cfg);
  o.require(cb.verdict.fail(), "epsilon_into_0_2 c-bounded status " + std::string(to_string(cb.verdict.status)));
  const auto psi = *find_gallery_net("psi_epsilon", cfg);
  const auto v = judge_moderate(local_sup_series(psi.net, psi.K, 0, 0, 0, cfg), cfg);
  o.require(v.fail(), "psi moderate status " + std::string(to_string(v.status)));
  o.require(slope_of(v) < -50, "psi slope " + fmt(slope_of(v)));
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(secs < 1.0, "runtime " + fmt(secs) + " s");
  o.detail = o.ok ? "psi slope " + fmt(slope_of(v)) + ", " + fmt(secs) + " s" : o.detail;
  return o;
}

Outcome criterion2(const Config& cfg) {
  Outcome o;
  const auto t0 = Clock::now();
  const auto u = *find_gallery_net("s1_jump", cfg);
  o.require(check_cbounded(u.net, u.K, cfg).verdict.pass(), "c-bounded");
  const auto m = check_moderate(u.net, u.K, cfg);
  o.require(m.pass(), "moderate status " + std::string(to_string(m.status)));
  double k1 = kInf;
  for (const auto& p : m.parts)
    if (p.label.find("k=1") != std::string::npos && std::isfinite(slope_of(p))) k1 = std::min(k1, slope_of(p));
  o.require(std::fabs(k1 + 1.0) <= 0.1, "k=1 slope " + fmt(k1));
  SupSeries oracle;
  for (double e : EpsGrid(cfg.eps_grid).values()) oracle.add(e, M_PI * (1 + e) * (1 + 1 / e) / 2);
  o.require(std::fabs(k1 - series_slope(oracle)) <= 0.1, "oracle slope " + fmt(series_slope(oracle)));
  o.require(check_single_chart(u.net, u.K, cfg).verdict.pass(), "single chart");
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(secs < 5.0, "runtime " + fmt(secs) + " s");
  if (o.ok) o.detail = "k=1 slope " + fmt(k1) + ", " + fmt(secs) + " s";
  return o;
}

Outcome criterion3(const Config& cfg) {
  Outcome o;
  int agree = 0, eq = 0, total = 0;
  for (const auto& p : equivalence_corpus(cfg)) {
    ++total;
    eq += p.equivalent;
    const auto v = check_equiv0(p.u, p.v, p.K, *p.dst.metric, cfg);
    if (routes_agree(v)) ++agree;
    else o.require(false, p.name + " routes disagree");
    o.require(v.pass() == p.equivalent, p.name + " status " + to_string(v.status));
  }
  o.require(total >= 10 && eq >= 5 && total - eq >= 5, "corpus size");
  if (o.ok) o.detail = std::to_string(agree) + "/" + std::to_string(total) + " routes agree";
  return o;
}

Outcome criterion4(const Config& cfg) {
  Outcome o;
  int witnesses = 0;
  for (const auto& p : equivalence_corpus(cfg)) {
    const auto s = separate_by_points(p.u, p.v, p.K, *p.dst.metric, cfg);
    if (s.has_value() != !p.equivalent) {
      o.require(false, p.name + (s ? " unexpected witness" : " missing witness"));
      continue;
    }
    if (!s) continue;
    ++witnesses;
    const double sl = slope_of(s->evaluation);
    o.require(s->evaluation.fail(), p.name + " witness values agree");
    o.require(std::fabs(sl - p.defect_order) <= 0.3,
              p.name + " slope " + fmt(sl) + " vs order " + fmt(p.defect_order));
  }
  if (o.ok) o.detail = std::to_string(witnesses) + " witnesses with matching defect orders";
  return o;
}

Outcome criterion5(const Config& cfg) {
  Outcome o;
  int n = 0;
  bool circle = false;
  for (const auto& c : composition_corpus(cfg)) {
    ++n;
    circle |= c.Z.atlas->name() == "circle";
    const auto gf = compose(c.g, c.f, cfg, {c.K});
    const auto v = check_equiv(gf, c.gf, {c.K}, *c.Z.metric, cfg);
    o.require(v.pass(), c.name + " compose vs closed form " + to_string(v.status));
    const auto gfp = compose(c.g, c.f_perturbed, cfg, {c.K});
    const auto w = check_equiv0(gf, gfp, c.K, *c.Z.metric, cfg);
    o.require(w.pass(), c.name + " perturbed composite " + to_string(w.status));
  }
  o.require(n >= 5, "corpus size");
  o.require(circle, "no circle-valued composite");
  if (o.ok) o.detail = std::to_string(n) + " composites equal their closed forms";
  return o;
}

Outcome criterion6(const Config& cfg) {
  Outcome o;
  double worst = 0.0;
  std::size_t samples = 0;
  for (const auto& c : composition_corpus(cfg)) {
    const auto TX = VectorBundle::tangent(c.X), TY = VectorBundle::tangent(c.Y), TZ = VectorBundle::tangent(c.Z);
    const auto Tf = tangent(c.f, TX, TY), Tg = tangent(c.g, TY, TZ), Tgf = tangent(c.gf, TX, TZ);
    const auto pts = c.K.sample(1000, cfg.seed);
    for (double eps : {0.25, 1.0 / 64, 1.0 / 4096}) {
      for (const auto& p : pts) {
        const auto x = seed(p.x, 1);
        const auto whole = Tgf.eval(eps, p.chart, x);
        const auto inner = Tf.eval(eps, p.chart, x);
        if (!whole || !inner) {
          o.require(false, c.name + " tangent undefined");
          continue;
        }
        const auto outer = Tg.local(eps, inner->base.chart, whole->base.chart, seed(values(inner->base.x), 1));
        if (!outer) {
          o.require(false, c.name + " outer tangent undefined");
          continue;
        }
        const Eigen::MatrixXd chain = outer->matrix.value() * inner->matrix.value();
        worst = std::max(worst, (chain - whole->matrix.value()).cwiseAbs().maxCoeff());
        ++samples;
      }
    }
  }
  o.require(samples >= 1000, "only " + std::to_string(samples) + " samples");
  o.require(worst <= 1e-6, "chain rule error " + fmt(worst));

  std::string slopes;
  for (const auto& n : gallery_nets(cfg)) {
    const auto tn = tangent_norm_series(n.net, n.K, *n.src.metric, *n.dst.metric, cfg);
    SupSeries cw;
    std::vector<SupSeries> per;
    for (int b = 0; b < n.dst.atlas->num_charts(); ++b) per.push_back(local_sup_series(n.net, n.K, 0, b, 1, cfg));
    for (std::size_t e = 0; e < tn.samples.size(); ++e) {
      double m = -kInf;
      for (const auto& s : per)
        if (!s.samples[e].empty) m = std::max(m, s.samples[e].log_sup);
      cw.add_log(tn.samples[e].eps, m);
    }
    const double a = series_slope(tn), b = series_slope(cw);
    o.require(slopes_match(a, b, 0.3), n.name + " tangent-norm slope " + fmt(a) + " vs chart-wise " + fmt(b));
    slopes += (slopes.empty() ? "" : " ") + n.name + "=" + fmt(a);
  }
  if (o.ok) o.detail = std::to_string(samples) + " samples, max error " + fmt(worst) + "; slopes " + slopes;
  return o;
}

Outcome criterion7(const Config& cfg) {
  Outcome o;
  int checks = 0;
  const auto insts = vbpoint_instances(cfg, 20, cfg.seed);
  for (const auto& in : insts)
    for (const auto& v : check_vbpoint_instance(in, cfg)) {
      ++checks;
      o.require(v.pass(), in.name + " " + v.label + " " + to_string(v.status));
    }
  o.require(insts.size() == 20, "instance count");
  if (o.ok) o.detail = std::to_string(insts.size()) + " instances, " + std::to_string(checks) + " checks Pass";
  return o;
}

Outcome criterion8(Config cfg) {
  Outcome o;
  cfg.m_probe = 5;
  int agreeing = 0;
  for (const auto& t : tensor_corpus(cfg)) {
    const auto a = tensor_insert(t.t, t.omegas, t.xis, t.p);
    const auto b = tensor_insert(t.t, t.omegas2, t.xis2, t.p);
    const auto v = numbers_equal(a, b, cfg);
    if (t.agree) {
      ++agreeing;
      o.require(v.pass(), t.name + " " + to_string(v.status));
    } else {
      o.require(v.fail(), t.name + " disagreeing pair " + to_string(v.status));
    }
  }
  o.require(agreeing >= 5, "corpus size");
  if (o.ok) o.detail = std::to_string(agreeing) + " agreeing pairs negligible at m_probe = 5";
  return o;
}

Outcome criterion9(const Config& cfg) {
  Outcome o;
  int absent = 0, found = 0;
  for (const auto& sc : section_corpus(cfg)) {
    const auto w = section_zero_witness(sc.s, sc.K, *sc.base.metric, cfg);
    if (sc.negligible) {
      absent += !w;
      o.require(!w, sc.name + " unexpected witness");
      continue;
    }
    if (!w) {
      o.require(false, sc.name + " missing witness");
      continue;
    }
    ++found;
    o.require(w->evaluation.fail(), sc.name + " witness value is zero");
    const double sl = slope_of(w->evaluation);
    o.require(std::fabs(sl - sc.slope) <= 0.3, sc.name + " slope " + fmt(sl) + " vs " + fmt(sc.slope));
  }
  o.require(absent == 3 && found == 3, "corpus size");
  if (o.ok) o.detail = "3 absent, 3 witnesses with slopes matching";
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::string runs[2];
  for (auto& out : runs) {
    gcm_context* ctx = nullptr;
    gcm_result* r = nullptr;
    if (gcm_context_create(nullptr, &ctx) != GCM_OK || gcm_gallery_run(ctx, nullptr, 0, &r) != GCM_OK) {
      o.require(false, gcm_last_error());
    } else {
      o.require(gcm_result_verdict(r) == GCM_PASS, "gallery mismatch");
      out = gcm_result_json(r);
    }
    gcm_result_destroy(r);
    gcm_context_destroy(ctx);
  }
  o.require(!runs[0].empty() && runs[0] == runs[1], "gallery records differ");
  if (o.ok) o.detail = "two gallery runs byte-identical (" + std::to_string(runs[0].size()) + " bytes)";
  return o;
}

}  // namespace

int main() {
  const Config cfg;
  const std::function<Outcome()> criteria[] = {
      [&] { return criterion1(cfg); }, [&] { return criterion2(cfg); }, [&] { return criterion3(cfg); },
      [&] { return criterion4(cfg); }, [&] { return criterion5(cfg); }, [&] { return criterion6(cfg); },
      [&] { return criterion7(cfg); }, [&] { return criterion8(cfg); }, [&] { return criterion9(cfg); },
      [] { return criterion10(); },
  };
  const auto t0 = Clock::now();
  int failed = 0;
  for (int i = 0; i < 10; ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("error: ") + e.what();
    }
    failed += !o.ok;
    std::printf("criterion %2d: %s  %s\n", i + 1, o.ok ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("total %.2f s, %d failed\n", std::chrono::duration<double>(Clock::now() - t0).count(), failed);
  return failed == 0 ? 0 : 1;
}
