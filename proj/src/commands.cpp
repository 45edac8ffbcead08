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
#include <functional>
#include <map>

#include "gcm/error.hpp"
#include "scene.hpp"

namespace gcm {

namespace {

[[noreturn]] void spec_error(const std::string& where, const std::string& msg) {
  throw Error(ErrorCode::SpecError, where + ": " + msg);
}

std::string arg(const Scene& s, const char* key) {
  if (!s.args.contains(key)) spec_error("args", std::string("missing argument '") + key + "'");
  const auto& v = s.args.at(key);
  if (!v.is_string()) spec_error(std::string("args.") + key, "expected a name");
  return v.get<std::string>();
}

std::optional<std::string> opt_arg(const Scene& s, const char* key) {
  if (!s.args.contains(key)) return std::nullopt;
  return arg(s, key);
}

std::vector<std::string> names_arg(const Scene& s, const char* key) {
  std::vector<std::string> out;
  if (!s.args.contains(key)) return out;
  const auto& v = s.args.at(key);
  if (!v.is_array()) spec_error(std::string("args.") + key, "expected an array of names");
  for (const auto& x : v) {
    if (!x.is_string()) spec_error(std::string("args.") + key, "expected an array of names");
    out.push_back(x.get<std::string>());
  }
  return out;
}

/// Region named by args[key], else the net's default region.
CompactRegion region_for(Scene& s, const Scene::Net& n, const char* key) {
  if (auto r = opt_arg(s, key)) return s.region(*r, std::string("args.") + key).K;
  if (n.K) return *n.K;
  spec_error("args", std::string("missing argument '") + key + "' and the net has no default region");
}

json region_json(const Atlas& A, const CompactRegion& K) {
  json out = json::array();
  for (const auto& p : K.pieces) out.push_back({{"chart", A.chart(p.chart).id}, {"lo", p.box.lo}, {"hi", p.box.hi}});
  return out;
}

json point_samples(const GenPoint& p, const Config& cfg) {
  json out = json::array();
  for (double e : EpsGrid(cfg.eps_grid).values()) {
    const Point q = p.at(e);
    json c = json::array();
    for (double x : q.x) c.push_back(number(x));
    out.push_back({{"eps", e}, {"chart", p.atlas->chart(q.chart).id}, {"coords", c}});
  }
  return out;
}

CommandResult finish(const std::string& cmd, const Verdict& v, json inputs) {
  CommandResult r;
  r.record = verdict_json(v, inputs);
  r.status = v.status;
  r.series = collect_csv(v, cmd);
  return r;
}

CommandResult cmd_moderate(Scene& s) {
  const auto n = s.net(arg(s, "net"), "args.net");
  const auto K = region_for(s, n, "K");
  return finish("check-moderate", check_moderate(n.net, K, s.cfg),
                {{"net", n.net.tag()}, {"K", region_json(*n.src.atlas, K)}});
}

CommandResult cmd_cbounded(Scene& s) {
  const auto n = s.net(arg(s, "net"), "args.net");
  const auto K = region_for(s, n, "K");
  auto rep = check_cbounded(n.net, K, s.cfg);
  auto r = finish("check-cbounded", rep.verdict, {{"net", n.net.tag()}, {"K", region_json(*n.src.atlas, K)}});
  r.record["eps0"] = rep.eps0;
  r.record["image"] = region_json(*n.dst.atlas, CompactRegion{rep.image, K.density});
  r.record["margins"] = series_json(rep.margins);
  r.series.emplace_back("check-cbounded.margins", series_csv(rep.margins));
  return r;
}

CommandResult cmd_single_chart(Scene& s) {
  const auto n = s.net(arg(s, "net"), "args.net");
  const auto K = region_for(s, n, "K");
  auto rep = check_single_chart(n.net, K, s.cfg);
  auto r = finish("check-single-chart", rep.verdict, {{"net", n.net.tag()}, {"K", region_json(*n.src.atlas, K)}});
  r.record["eps0"] = rep.eps0;
  r.record["chart"] = rep.chart ? json(*rep.chart) : json();
  r.record["margin"] = number(rep.margin);
  return r;
}

const RiemannianMetric& metric_for(Scene& s, const Scene::Net& n) {
  if (auto m = opt_arg(s, "metric")) return *s.manifold(*m, "args.metric").metric;
  return *n.dst.metric;
}

void same_manifolds(const Scene::Net& u, const Scene::Net& v) {
  if (u.src.atlas->name() != v.src.atlas->name() || u.dst.atlas->name() != v.dst.atlas->name())
    throw Error(ErrorCode::TypeMismatch, u.net.tag() + " and " + v.net.tag() + " act between different manifolds");
}

CommandResult cmd_equiv0(Scene& s) {
  const auto u = s.net(arg(s, "u"), "args.u");
  const auto v = s.net(arg(s, "v"), "args.v");
  same_manifolds(u, v);
  const auto K = region_for(s, u, "K");
  auto verdict = check_equiv0(u.net, v.net, K, metric_for(s, u), s.cfg);
  auto r = finish("check-equiv0", verdict,
                  {{"u", u.net.tag()}, {"v", v.net.tag()}, {"K", region_json(*u.src.atlas, K)}});
  r.record["routes_agree"] = routes_agree(verdict);
  return r;
}

CommandResult cmd_equiv(Scene& s) {
  const auto u = s.net(arg(s, "u"), "args.u");
  const auto v = s.net(arg(s, "v"), "args.v");
  same_manifolds(u, v);
  std::vector<CompactRegion> Ks;
  json kj = json::array();
  for (const auto& k : names_arg(s, "Ks")) Ks.push_back(s.region(k, "args.Ks").K);
  if (Ks.empty()) Ks.push_back(region_for(s, u, "K"));
  for (const auto& K : Ks) kj.push_back(region_json(*u.src.atlas, K));
  return finish("check-equiv", check_equiv(u.net, v.net, Ks, metric_for(s, u), s.cfg),
                {{"u", u.net.tag()}, {"v", v.net.tag()}, {"Ks", kj}});
}

CommandResult cmd_eval_point(Scene& s) {
  const auto n = s.net(arg(s, "net"), "args.net");
  const auto& p = s.point(arg(s, "point"), "args.point");
  auto q = eval_at(n.net, p.p, s.cfg);
  CommandResult r;
  r.record["check"] = "eval-point";
  r.record["inputs"] = {{"net", n.net.tag()}, {"point", p.p.tag}};
  r.status = Status::Pass;
  if (auto other = opt_arg(s, "compare")) {
    const auto& c = s.point(*other, "args.compare");
    auto v = points_equal(q, c.p, *n.dst.metric, s.cfg);
    r.status = v.status;
    r.series = collect_csv(v, "eval-point");
    r.record["compare"] = verdict_json(v);
  }
  r.record["status"] = to_string(r.status);
  r.record["samples"] = point_samples(q, s.cfg);
  r.record["support"] = region_json(*q.atlas, q.support);
  return r;
}

CommandResult cmd_compose(Scene& s) {
  const auto g = s.net(arg(s, "outer"), "args.outer");
  const auto f = s.net(arg(s, "inner"), "args.inner");
  const auto K = region_for(s, f, "K");
  auto gf = compose(g.net, f.net, s.cfg, {K});
  auto mod = check_moderate(gf, K, s.cfg);
  mod.label = "moderate";
  std::vector<Verdict> parts{mod};
  if (auto e = opt_arg(s, "expect")) {
    const auto x = s.net(*e, "args.expect");
    auto eq = check_equiv(gf, x.net, {K}, *g.dst.metric, s.cfg);
    eq.label = "equiv " + x.net.tag();
    parts.push_back(eq);
  }
  auto v = conjunction("compose", parts, Worst::MostNegativeSlope);
  v.label = gf.tag();
  auto r = finish("compose", v, {{"outer", g.net.tag()}, {"inner", f.net.tag()}, {"K", region_json(*f.src.atlas, K)}});
  r.record["provenance"] = gf.provenance;
  return r;
}

CommandResult cmd_tangent(Scene& s) {
  const auto n = s.net(arg(s, "net"), "args.net");
  const auto K = region_for(s, n, "K");
  auto Tu = tangent(n.net, VectorBundle::tangent(n.src), VectorBundle::tangent(n.dst));
  auto hom = check_vbhom_moderate(Tu, K, s.cfg);
  hom.label = "vbhom";
  auto norm = judge_moderate(tangent_norm_series(n.net, K, *n.src.metric, *n.dst.metric, s.cfg), s.cfg);
  norm.label = "|Tu|";
  auto v = conjunction("tangent", {hom, norm}, Worst::MostNegativeSlope);
  v.label = Tu.tag();
  return finish("tangent", v, {{"net", n.net.tag()}, {"K", region_json(*n.src.atlas, K)}});
}

CommandResult cmd_vb_check(Scene& s) {
  const auto& A = s.vbhom(arg(s, "hom"), "args.hom");
  const auto& L = s.region(arg(s, "L"), "args.L");
  if (auto other = opt_arg(s, "other")) {
    const auto& B = s.vbhom(*other, "args.other");
    const bool order0 = s.args.value("order0", false);
    return finish("vb-check", check_vbhom_equiv(A, B, L.K, *A.dst()->base().metric, s.cfg, order0),
                  {{"hom", A.tag()}, {"other", B.tag()}, {"L", region_json(*A.src()->atlas(), L.K)}, {"order0", order0}});
  }
  return finish("vb-check", check_vbhom_moderate(A, L.K, s.cfg),
                {{"hom", A.tag()}, {"L", region_json(*A.src()->atlas(), L.K)}});
}

CommandResult cmd_vb_eval(Scene& s) {
  std::optional<VBPoint> e;
  json inputs;
  if (auto h = opt_arg(s, "hom")) {
    const auto& A = s.vbhom(*h, "args.hom");
    const auto& x = s.vbpoint(arg(s, "vbpoint"), "args.vbpoint");
    e = vbhom_eval(A, x, s.cfg);
    inputs = {{"hom", A.tag()}, {"vbpoint", x.tag}};
  } else {
    const auto& sec = s.section(arg(s, "section"), "args.section");
    const auto& p = s.point(arg(s, "point"), "args.point");
    e = section_eval(sec, p.p, s.cfg);
    inputs = {{"section", sec.tag()}, {"point", p.p.tag}};
  }
  auto growth = e->check_growth(s.cfg);
  growth.label = "growth";
  std::vector<Verdict> parts{growth};
  const auto& g = *e->bundle->base().metric;
  if (auto c = opt_arg(s, "compare")) {
    auto eq = vbpoints_equal(*e, s.vbpoint(*c, "args.compare"), g, s.cfg);
    eq.label = "equal " + *c;
    parts = {eq};
  }
  auto v = parts.size() == 1 ? parts[0] : conjunction("vb-eval", parts, Worst::SmallestSlope);
  auto r = finish("vb-eval", v, inputs);
  json samples = json::array();
  const Atlas& X = *e->bundle->atlas();
  for (double eps : EpsGrid(s.cfg.eps_grid).values()) {
    const BundlePoint b = e->at(eps);
    json bx = json::array(), fx = json::array();
    for (double x : b.base.x) bx.push_back(number(x));
    for (double x : b.fiber) fx.push_back(number(x));
    samples.push_back({{"eps", eps}, {"chart", X.chart(b.base.chart).id}, {"base", bx}, {"fiber", fx}});
  }
  r.record["values"] = samples;
  return r;
}

CommandResult cmd_tensor_insert(Scene& s) {
  const auto& t = s.section(arg(s, "tensor"), "args.tensor");
  const auto& p = s.point(arg(s, "point"), "args.point");
  auto fields = [&](const char* key) {
    std::vector<SectionNet> out;
    for (const auto& n : names_arg(s, key)) out.push_back(s.section(n, std::string("args.") + key));
    return out;
  };
  auto value = tensor_insert(t, fields("omegas"), fields("xis"), p.p);
  Verdict v;
  if (s.args.contains("compare")) {
    const auto& c = s.args.at("compare");
    std::vector<SectionNet> om, xi;
    for (const auto& n : c.value("omegas", json::array())) om.push_back(s.section(n.get<std::string>(), "args.compare.omegas"));
    for (const auto& n : c.value("xis", json::array())) xi.push_back(s.section(n.get<std::string>(), "args.compare.xis"));
    v = numbers_equal(value, tensor_insert(t, om, xi, p.p), s.cfg);
  } else {
    v = value.check_moderate(s.cfg);
  }
  v.label = value.tag();
  auto r = finish("tensor-insert", v, {{"tensor", t.tag()}, {"point", p.p.tag}});
  json vals = json::array();
  for (double e : EpsGrid(s.cfg.eps_grid).values()) vals.push_back({{"eps", e}, {"value", number(value.at(e))}});
  r.record["values"] = vals;
  return r;
}

const std::map<std::string, std::function<CommandResult(Scene&)>>& table() {
  static const std::map<std::string, std::function<CommandResult(Scene&)>> t = {
      {"check-cbounded", cmd_cbounded}, {"check-equiv", cmd_equiv},     {"check-equiv0", cmd_equiv0},
      {"check-moderate", cmd_moderate}, {"check-single-chart", cmd_single_chart}, {"compose", cmd_compose},
      {"eval-point", cmd_eval_point},   {"tangent", cmd_tangent},       {"tensor-insert", cmd_tensor_insert},
      {"vb-check", cmd_vb_check},       {"vb-eval", cmd_vb_eval},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : table()) out.push_back(k);
    return out;
  }();
  return names;
}

CommandResult run_command(const std::string& command, Scene& scene) {
  auto it = table().find(command);
  if (it == table().end()) throw Error(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
  auto r = it->second(scene);
  r.record["config"] = config_json(scene.cfg);
  return r;
}

}  // namespace gcm
