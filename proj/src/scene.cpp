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

#include "scene.hpp"

#include <cmath>
#include <set>

#include "expr.hpp"
#include "gallery.hpp"
#include "gcm/error.hpp"

namespace gcm {

namespace {

[[noreturn]] void spec_error(const std::string& where, const std::string& msg) {
  throw Error(ErrorCode::SpecError, where + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) spec_error(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string str(const json& j, const char* key, const std::string& where) {
  const auto& v = field(j, key, where);
  if (!v.is_string()) spec_error(where + "." + key, "expected a string");
  return v.get<std::string>();
}

int integer(const json& j, const char* key, const std::string& where, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) spec_error(where + "." + key, "expected an integer");
  return j.at(key).get<int>();
}

Vec numbers_of(const json& j, const std::string& where) {
  if (!j.is_array()) spec_error(where, "expected an array of numbers");
  Vec out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    try {
      out.push_back(number_from(j[i]));
    } catch (const Error&) {
      spec_error(where + "[" + std::to_string(i) + "]", "expected a number");
    }
  }
  return out;
}

int chart_of(const Atlas& A, const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) return 0;
  const auto id = str(j, key, where);
  for (int i = 0; i < A.num_charts(); ++i)
    if (A.chart(i).id == id) return i;
  spec_error(where + "." + key, "no chart '" + id + "' in atlas " + A.name());
}

std::vector<Expr> exprs(const json& j, const std::string& where, std::size_t count, int nvars) {
  auto out = parse_exprs(j, where);
  if (out.size() != count)
    spec_error(where, "expected " + std::to_string(count) + " expressions, got " + std::to_string(out.size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].max_var() >= nvars)
      spec_error(where + "[" + std::to_string(i) + "]",
                 nvars == 0 ? "expression may depend only on eps" : "coordinate index exceeds chart dimension");
  return out;
}

JetVec eval_all(const std::vector<Expr>& e, std::span<const Jet> x, double eps) {
  JetVec out;
  for (const auto& f : e) out.push_back(f.eval(x, eps));
  return out;
}

Vec eval_all(const std::vector<Expr>& e, double eps) {
  Vec out;
  for (const auto& f : e) out.push_back(f.eval(std::span<const double>{}, eps));
  return out;
}

/// x in chart a re-expressed in chart home, or nothing outside the overlap.
std::optional<JetVec> to_home(const Atlas& A, int a, int home, std::span<const Jet> x) {
  if (a == home) return JetVec(x.begin(), x.end());
  if (!A.has_transition(a, home)) return std::nullopt;
  try {
    return A.transition(a, home, x);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::OutOfDomain) return std::nullopt;
    throw;
  }
}

template <class T>
const T& lookup(const std::map<std::string, T>& m, const std::string& name, const std::string& where, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) spec_error(where, std::string("unknown ") + what + " '" + name + "'");
  return it->second;
}

template <class F>
void each(const json& spec, const char* key, F&& f) {
  if (!spec.contains(key)) return;
  const auto& obj = spec.at(key);
  if (!obj.is_object()) spec_error(key, "expected an object of named entries");
  for (const auto& [name, j] : obj.items()) f(name, j, std::string(key) + "." + name);
}

Manifold load_manifold(const Scene& s, const json& j, const std::string& where) {
  const auto type = str(j, "type", where);
  if (type == "euclidean") {
    const int dim = integer(j, "dim", where, 1);
    if (dim < 1 || dim > 8) spec_error(where + ".dim", "dimension must lie in [1, 8]");
    Vec lo = j.contains("lo") ? numbers_of(j.at("lo"), where + ".lo") : Vec{};
    Vec hi = j.contains("hi") ? numbers_of(j.at("hi"), where + ".hi") : Vec{};
    try {
      return builtin::euclidean(dim, lo, hi);
    } catch (const Error& e) {
      spec_error(where, e.what());
    }
  }
  if (type == "circle") return builtin::circle();
  if (type == "sphere") return builtin::sphere();
  if (type == "union" || type == "product") {
    const auto& of = field(j, "of", where);
    if (!of.is_array() || of.size() != 2 || !of[0].is_string() || !of[1].is_string())
      spec_error(where + ".of", "expected two manifold names");
    const auto& a = s.manifold(of[0].get<std::string>(), where + ".of[0]");
    const auto& b = s.manifold(of[1].get<std::string>(), where + ".of[1]");
    try {
      return type == "union" ? builtin::disjoint_union(a, b) : builtin::product(a, b);
    } catch (const Error& e) {
      spec_error(where, e.what());
    }
  }
  spec_error(where + ".type", "unknown manifold type '" + type + "'");
}

CompactRegion load_region(const Manifold& M, const json& j, const std::string& where, const Config& cfg) {
  CompactRegion K;
  K.density = integer(j, "density", where, cfg.lattice_density);
  if (j.contains("interval")) {
    const Vec ab = numbers_of(j.at("interval"), where + ".interval");
    if (ab.size() != 2 || M.atlas->dim() != 1) spec_error(where + ".interval", "interval needs a 1-dimensional manifold");
    K.pieces.push_back({0, Box{{ab[0]}, {ab[1]}}});
  } else {
    const auto& pieces = field(j, "pieces", where);
    if (!pieces.is_array()) spec_error(where + ".pieces", "expected an array");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const std::string w = where + ".pieces[" + std::to_string(i) + "]";
      const auto& p = pieces[i];
      K.pieces.push_back({chart_of(*M.atlas, p, "chart", w), Box{numbers_of(field(p, "lo", w), w + ".lo"),
                                                                  numbers_of(field(p, "hi", w), w + ".hi")}});
    }
  }
  try {
    K.validate(*M.atlas);
  } catch (const Error& e) {
    spec_error(where, e.what());
  }
  return K;
}

struct ChartDef {
  int from = 0, to = 0;
  std::vector<Expr> expr;
};

Scene::Net load_net(Scene& s, const std::string& name, const json& j, const std::string& where) {
  if (j.contains("gallery")) {
    const auto g = str(j, "gallery", where);
    auto n = find_gallery_net(g, s.cfg);
    if (!n) spec_error(where + ".gallery", "unknown gallery net '" + g + "'");
    return {n->net, n->src, n->dst, n->K};
  }
  if (j.contains("compose")) {
    const auto& c = j.at("compose");
    if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
      spec_error(where + ".compose", "expected [outer, inner]");
    const auto outer = s.net(c[0].get<std::string>(), where + ".compose[0]");
    const auto inner = s.net(c[1].get<std::string>(), where + ".compose[1]");
    std::vector<CompactRegion> probes;
    if (j.contains("probes"))
      for (std::size_t i = 0; i < j.at("probes").size(); ++i)
        probes.push_back(s.region(j.at("probes")[i].get<std::string>(), where + ".probes").K);
    try {
      return {compose(outer.net, inner.net, s.cfg, probes), inner.src, outer.dst, inner.K};
    } catch (const Error& e) {
      spec_error(where, e.what());
    }
  }
  const auto src = s.manifold(str(j, "src", where), where + ".src");
  const auto dst = s.manifold(str(j, "dst", where), where + ".dst");
  const int n = src.atlas->dim(), m = dst.atlas->dim();
  std::optional<CompactRegion> K;
  if (j.contains("K")) K = s.region(str(j, "K", where), where + ".K").K;
  if (j.contains("angle")) {
    if (dst.atlas->name() != "circle") spec_error(where + ".dst", "angle nets need a circle as target");
    const int from = chart_of(*src.atlas, j, "from", where);
    const Expr angle = exprs(j.at("angle"), where + ".angle", 1, n)[0];
    auto A = src.atlas;
    auto fn = [A, from, angle](double eps, int a, std::span<const Jet> x) -> std::optional<ChartJets> {
      auto xs = to_home(*A, a, from, x);
      if (!xs) return std::nullopt;
      return builtin::circle_point(angle.eval(*xs, eps));
    };
    return {MapNet(src.atlas, dst.atlas, fn, name), src, dst, K};
  }
  std::vector<ChartDef> defs;
  auto def = [&](const json& d, const std::string& w) {
    defs.push_back({chart_of(*src.atlas, d, "from", w), chart_of(*dst.atlas, d, "to", w),
                    exprs(field(d, "expr", w), w + ".expr", static_cast<std::size_t>(m), n)});
  };
  if (j.contains("charts")) {
    const auto& cs = j.at("charts");
    if (!cs.is_array() || cs.empty()) spec_error(where + ".charts", "expected a non-empty array");
    for (std::size_t i = 0; i < cs.size(); ++i) def(cs[i], where + ".charts[" + std::to_string(i) + "]");
  } else {
    def(j, where);
  }
  auto A = src.atlas;
  auto fn = [A, defs](double eps, int a, std::span<const Jet> x) -> std::optional<ChartJets> {
    const ChartDef* d = &defs.front();
    for (const auto& c : defs)
      if (c.from == a) d = &c;
    auto xs = to_home(*A, a, d->from, x);
    if (!xs) return std::nullopt;
    return ChartJets{d->to, eval_all(d->expr, *xs, eps)};
  };
  return {MapNet(src.atlas, dst.atlas, fn, name), src, dst, K};
}

BundlePtr load_bundle(const Scene& s, const json& j, const std::string& where) {
  const auto type = str(j, "type", where);
  const auto& M = s.manifold(str(j, "base", where), where + ".base");
  try {
    if (type == "tangent") return VectorBundle::tangent(M);
    if (type == "cotangent") return VectorBundle::cotangent(M);
    if (type == "trivial") return VectorBundle::trivial(M, integer(j, "rank", where, 1));
    if (type == "tensor") return VectorBundle::tensor(M, integer(j, "r", where, 0), integer(j, "s", where, 0));
  } catch (const Error& e) {
    spec_error(where, e.what());
  }
  spec_error(where + ".type", "unknown bundle type '" + type + "'");
}

VBHomNet load_vbhom(Scene& s, const json& j, const std::string& where) {
  if (j.contains("tangent")) {
    const auto n = s.net(str(j, "tangent", where), where + ".tangent");
    BundlePtr TX = j.contains("src") ? s.bundle(str(j, "src", where), where + ".src") : VectorBundle::tangent(n.src);
    BundlePtr TY = j.contains("dst") ? s.bundle(str(j, "dst", where), where + ".dst") : VectorBundle::tangent(n.dst);
    try {
      return tangent(n.net, TX, TY);
    } catch (const Error& e) {
      spec_error(where, e.what());
    }
  }
  const auto n = s.net(str(j, "base", where), where + ".base");
  BundlePtr E = s.bundle(str(j, "src", where), where + ".src");
  BundlePtr F = s.bundle(str(j, "dst", where), where + ".dst");
  if (E->atlas()->name() != n.src.atlas->name() || F->atlas()->name() != n.dst.atlas->name())
    spec_error(where, "bundles do not sit over the base net's manifolds");
  const int home = chart_of(*E->atlas(), j, "chart", where);
  const auto& rows = field(j, "matrix_part", where);
  const int nr = F->fiber_dim(), nc = E->fiber_dim(), dim = E->atlas()->dim();
  if (!rows.is_array() || static_cast<int>(rows.size()) != nr)
    spec_error(where + ".matrix_part", "expected " + std::to_string(nr) + " rows");
  std::vector<std::vector<Expr>> M;
  for (int i = 0; i < nr; ++i)
    M.push_back(exprs(rows[i], where + ".matrix_part[" + std::to_string(i) + "]", static_cast<std::size_t>(nc), dim));
  auto net = n.net;
  auto fn = [E, net, home, M, nr, nc](double eps, int a, std::span<const Jet> x) -> std::optional<VBHomValue> {
    auto xs = to_home(*E->atlas(), a, home, x);
    if (!xs) return std::nullopt;
    auto base = net.eval(eps, home, *xs);
    if (!base) return std::nullopt;
    JetMatrix A(nr, nc, x[0]);
    for (int i = 0; i < nr; ++i)
      for (int k = 0; k < nc; ++k) A(i, k) = M[i][k].eval(*xs, eps);
    if (a != home) A = A * E->transition(a, home, x);
    return VBHomValue{*base, A};
  };
  return VBHomNet(E, F, fn, where.substr(where.find('.') + 1));
}

}  // namespace

Scene Scene::load(const json& spec, const Config& base) {
  if (!spec.is_object()) spec_error("spec", "expected a JSON object");
  for (const auto& [k, _] : spec.items()) {
    static const std::set<std::string> known = {"config",  "manifolds", "nets",      "regions",  "points", "numbers",
                                                "bundles", "sections",  "vbhoms",    "vbpoints", "args",   "command"};
    if (!known.count(k)) spec_error(k, "unknown top-level key");
  }
  Scene s;
  s.cfg = base;
  if (spec.contains("config")) {
    try {
      s.cfg = config_from_json(spec.at("config"), base);
    } catch (const Error& e) {
      spec_error("config", e.what());
    }
  }
  each(spec, "manifolds", [&](const std::string& name, const json& j, const std::string& w) {
    s.manifolds[name] = load_manifold(s, j, w);
  });
  each(spec, "bundles", [&](const std::string& name, const json& j, const std::string& w) {
    s.bundles[name] = load_bundle(s, j, w);
  });
  each(spec, "regions", [&](const std::string& name, const json& j, const std::string& w) {
    const auto& M = s.manifold(str(j, "manifold", w), w + ".manifold");
    s.regions.insert_or_assign(name, Region{M, load_region(M, j, w, s.cfg)});
  });
  each(spec, "nets", [&](const std::string& name, const json& j, const std::string& w) {
    s.nets.insert_or_assign(name, load_net(s, name, j, w));
  });
  each(spec, "numbers", [&](const std::string& name, const json& j, const std::string& w) {
    const Expr e = exprs(j, w, 1, 0)[0];
    s.numbers.insert_or_assign(name, GenNumber([e](double eps) { return e.eval(std::span<const double>{}, eps); }, name));
  });
  each(spec, "points", [&](const std::string& name, const json& j, const std::string& w) {
    if (j.contains("eval")) {
      const auto n = s.net(str(j, "eval", w), w + ".eval");
      const auto& p = s.point(str(j, "at", w), w + ".at");
      try {
        s.points.insert_or_assign(name, PointEntry{n.dst, eval_at(n.net, p.p, s.cfg)});
      } catch (const Error& e) {
        spec_error(w, e.what());
      }
      return;
    }
    const auto& M = s.manifold(str(j, "manifold", w), w + ".manifold");
    const int c = chart_of(*M.atlas, j, "chart", w);
    const auto co = exprs(field(j, "coords", w), w + ".coords", static_cast<std::size_t>(M.atlas->dim()), 0);
    try {
      s.points.insert_or_assign(
          name, PointEntry{M, GenPoint::from_net(M.atlas, [c, co](double e) { return Point{c, eval_all(co, e)}; }, s.cfg,
                                                 name)});
    } catch (const Error& e) {
      spec_error(w, e.what());
    }
  });
  each(spec, "sections", [&](const std::string& name, const json& j, const std::string& w) {
    const auto& B = s.bundle(str(j, "bundle", w), w + ".bundle");
    const int home = chart_of(*B->atlas(), j, "chart", w);
    const auto co = exprs(field(j, "coefficients", w), w + ".coefficients", static_cast<std::size_t>(B->fiber_dim()),
                          B->atlas()->dim());
    s.sections.insert_or_assign(
        name, SectionNet::from_chart(B, home, [co](double e, int, std::span<const Jet> x) { return eval_all(co, x, e); },
                                     name));
  });
  each(spec, "vbhoms", [&](const std::string& name, const json& j, const std::string& w) {
    s.vbhoms.insert_or_assign(name, load_vbhom(s, j, w));
  });
  each(spec, "vbpoints", [&](const std::string& name, const json& j, const std::string& w) {
    try {
      if (j.contains("section")) {
        const auto& sec = s.section(str(j, "section", w), w + ".section");
        s.vbpoints.insert_or_assign(name, section_eval(sec, s.point(str(j, "at", w), w + ".at").p, s.cfg));
        return;
      }
      if (j.contains("hom")) {
        const auto& A = s.vbhom(str(j, "hom", w), w + ".hom");
        s.vbpoints.insert_or_assign(name, vbhom_eval(A, s.vbpoint(str(j, "of", w), w + ".of"), s.cfg));
        return;
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SpecError) throw;
      spec_error(w, e.what());
    }
    const auto& B = s.bundle(str(j, "bundle", w), w + ".bundle");
    const int c = chart_of(*B->atlas(), j, "chart", w);
    const auto base = exprs(field(j, "base", w), w + ".base", static_cast<std::size_t>(B->atlas()->dim()), 0);
    const auto fib = exprs(field(j, "fiber", w), w + ".fiber", static_cast<std::size_t>(B->fiber_dim()), 0);
    try {
      s.vbpoints.insert_or_assign(
          name, VBPoint::from_net(B, [c, base, fib](double e) { return BundlePoint{Point{c, eval_all(base, e)}, eval_all(fib, e)}; },
                                  s.cfg, name));
    } catch (const Error& e) {
      spec_error(w, e.what());
    }
  });
  if (spec.contains("args")) {
    if (!spec.at("args").is_object()) spec_error("args", "expected an object");
    s.args = spec.at("args");
  }
  return s;
}

const Scene::Net& Scene::net(const std::string& name, const std::string& where) {
  if (!nets.count(name)) {
    if (auto g = find_gallery_net(name, cfg)) nets.insert_or_assign(name, Net{g->net, g->src, g->dst, g->K});
  }
  return lookup(nets, name, where, "net");
}
const Scene::Region& Scene::region(const std::string& name, const std::string& where) const {
  return lookup(regions, name, where, "region");
}
const Scene::PointEntry& Scene::point(const std::string& name, const std::string& where) const {
  return lookup(points, name, where, "point");
}
const Manifold& Scene::manifold(const std::string& name, const std::string& where) const {
  return lookup(manifolds, name, where, "manifold");
}
const BundlePtr& Scene::bundle(const std::string& name, const std::string& where) const {
  return lookup(bundles, name, where, "bundle");
}
const SectionNet& Scene::section(const std::string& name, const std::string& where) const {
  return lookup(sections, name, where, "section");
}
const VBHomNet& Scene::vbhom(const std::string& name, const std::string& where) const {
  return lookup(vbhoms, name, where, "vb-homomorphism");
}
const VBPoint& Scene::vbpoint(const std::string& name, const std::string& where) const {
  return lookup(vbpoints, name, where, "vb-point");
}
const GenNumber& Scene::number(const std::string& name, const std::string& where) const {
  return lookup(numbers, name, where, "number");
}

}  // namespace gcm
