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
#include <string>

#include "doctest.h"
#include "expr.hpp"
#include "gcm/error.hpp"
#include "scene.hpp"

using namespace gcm;

namespace {

double eval1(const char* text, double x, double eps) {
  const double xs[] = {x};
  return Expr::parse(nlohmann::json::parse(text), "e").eval(std::span<const double>(xs, 1), eps);
}

std::string spec_error_of(const char* text) {
  try {
    Scene::load(json::parse(text), Config{});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpecError);
    return e.what();
  }
  return "";
}

const char* kScene = R"({
  "manifolds": {"R": {"type": "euclidean", "dim": 1}, "S1": {"type": "circle"}},
  "regions": {"K": {"manifold": "R", "interval": [0, 1]}, "L": {"manifold": "R", "interval": [-1, 1]}},
  "nets": {
    "u": {"src": "R", "dst": "R", "expr": [["sin", "x"]]},
    "v": {"src": "R", "dst": "R", "expr": [["add", ["sin", "x"], ["exp", ["div", -1, "eps"]]]]},
    "w": {"src": "R", "dst": "R", "expr": [["add", ["sin", "x"], "eps"]]},
    "g": {"src": "R", "dst": "R", "expr": [["exp", "x"]]},
    "gu": {"compose": ["g", "u"], "probes": ["K"]},
    "closed": {"src": "R", "dst": "R", "expr": [["exp", ["sin", "x"]]]},
    "a": {"src": "R", "dst": "S1", "angle": ["mul", 2, "x"]}
  },
  "points": {
    "p": {"manifold": "R", "coords": [["add", 0.3, "eps"]]},
    "q": {"manifold": "R", "coords": [["add", ["add", 0.3, "eps"], ["exp", ["div", -1, "eps"]]]]},
    "up": {"eval": "u", "at": "p"}
  },
  "numbers": {"r": ["div", 1, "eps"]},
  "bundles": {
    "TR": {"type": "tangent", "base": "R"},
    "T02": {"type": "tensor", "base": "R", "r": 0, "s": 2},
    "CR": {"type": "cotangent", "base": "R"}
  },
  "sections": {
    "xi": {"bundle": "TR", "chart": "x", "coefficients": [["cos", "x"]]},
    "big": {"bundle": "TR", "chart": "x", "coefficients": [["div", 1, "eps"]]},
    "g2": {"bundle": "T02", "chart": "x", "coefficients": [["add", 1, ["mul", "x", "x"]]]}
  },
  "vbhoms": {"Tu": {"tangent": "u", "src": "TR", "dst": "TR"}, "Tv": {"tangent": "v", "src": "TR", "dst": "TR"},
             "Tw": {"tangent": "w", "src": "TR", "dst": "TR"}},
  "vbpoints": {
    "e": {"bundle": "TR", "chart": "x", "base": [["add", 0.3, "eps"]], "fiber": [1]},
    "Te": {"hom": "Tu", "of": "e"},
    "Te2": {"bundle": "TR", "chart": "x", "base": [["sin", ["add", 0.3, "eps"]]], "fiber": [["cos", ["add", 0.3, "eps"]]]},
    "xp": {"section": "xi", "at": "p"}
  }
})";

Status run(const std::string& cmd, json args, const Config& cfg = Config{}) {
  auto scene = Scene::load(json::parse(kScene), cfg);
  scene.args = std::move(args);
  auto r = run_command(cmd, scene);
  CHECK(r.record.contains("config"));
  CHECK(r.record.at("check").is_string());
  return r.status;
}

}  // namespace

TEST_CASE("expressions evaluate to their closed forms") {
  CHECK(eval1("[\"add\", 1, [\"mul\", 2, \"x\"]]", 0.5, 0.1) == doctest::Approx(2.0));
  CHECK(eval1("[\"sub\", \"x\", \"eps\"]", 0.5, 0.1) == doctest::Approx(0.4));
  CHECK(eval1("[\"div\", \"x\", \"eps\"]", 0.5, 0.1) == doctest::Approx(5.0));
  CHECK(eval1("[\"neg\", \"x0\"]", 0.5, 0.1) == doctest::Approx(-0.5));
  CHECK(eval1("[\"pow\", \"x\", [\"neg\", \"eps\"]]", 2.0, 0.5) == doctest::Approx(std::pow(2.0, -0.5)));
  CHECK(eval1("[\"sin\", \"pi\"]", 0.0, 0.1) == doctest::Approx(0.0));
  CHECK(eval1("[\"cos\", \"x\"]", 0.7, 0.1) == doctest::Approx(std::cos(0.7)));
  CHECK(eval1("[\"tanh\", \"x\"]", 0.7, 0.1) == doctest::Approx(std::tanh(0.7)));
  CHECK(eval1("[\"exp\", \"x\"]", 0.7, 0.1) == doctest::Approx(std::exp(0.7)));
  CHECK(eval1("[\"log\", \"x\"]", 0.7, 0.1) == doctest::Approx(std::log(0.7)));
  CHECK(eval1("[\"sqrt\", \"x\"]", 0.7, 0.1) == doctest::Approx(std::sqrt(0.7)));
  CHECK(eval1("[\"atan\", \"x\"]", 0.7, 0.1) == doctest::Approx(std::atan(0.7)));
  CHECK(eval1("[\"bump\", \"x\"]", 0.5, 0.1) == doctest::Approx(std::exp(-1 / 0.75)));
  CHECK(eval1("[\"bump\", \"x\"]", 1.5, 0.1) == 0.0);
  CHECK(eval1("[\"h_eps\", \"x\"]", 0.3, 0.1) ==
        doctest::Approx(1.1 / 2 * (std::tanh(0.3) + std::tanh(3.0))));
}

TEST_CASE("expression jets carry exact derivatives") {
  auto e = Expr::parse(nlohmann::json::parse(R"(["mul", ["sin", "x0"], ["exp", "x1"]])"), "e");
  CHECK(e.max_var() == 1);
  const double x0[] = {0.4, -0.2};
  auto j = e.eval(seed(x0, 2), 0.1);
  CHECK(j.value() == doctest::Approx(std::sin(0.4) * std::exp(-0.2)));
  CHECK(j.derivative(0).value() == doctest::Approx(std::cos(0.4) * std::exp(-0.2)));
  CHECK(j.derivative(1).value() == doctest::Approx(std::sin(0.4) * std::exp(-0.2)));
  CHECK(j.derivative(0).derivative(0).value() == doctest::Approx(-std::sin(0.4) * std::exp(-0.2)));
}

TEST_CASE("malformed expressions name their location") {
  auto fails = [](const char* text) {
    try {
      Expr::parse(nlohmann::json::parse(text), "nets.u.expr[0]");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SpecError);
      CHECK(std::string(e.what()).find("nets.u.expr[0]") != std::string::npos);
      return true;
    }
    return false;
  };
  CHECK(fails(R"(["frobnicate", "x"])"));
  CHECK(fails(R"(["sin"])"));
  CHECK(fails(R"(["div", 1])"));
  CHECK(fails(R"("y")"));
  CHECK(fails(R"(["pow", "x", "x"])"));
  CHECK(fails(R"({"a": 1})"));
}

TEST_CASE("scene errors name the offending entry") {
  CHECK(spec_error_of(R"({"manifolds": {"M": {"type": "torus"}}})").find("manifolds.M") != std::string::npos);
  CHECK(spec_error_of(R"({"nets": {"u": {"src": "R", "dst": "R", "expr": ["x"]}}})").find("nets.u") !=
        std::string::npos);
  CHECK(spec_error_of(R"({"config": {"no_such_knob": 1}})").find("no_such_knob") != std::string::npos);
  CHECK(spec_error_of(R"({"frobs": {}})").find("frobs") != std::string::npos);
  auto scene = Scene::load(json::parse(kScene), Config{});
  scene.args = json::object();
  CHECK_THROWS_AS(run_command("check-moderate", scene), Error);
  scene.args = {{"net", "nope"}};
  CHECK_THROWS_WITH_AS(run_command("check-moderate", scene), doctest::Contains("args.net"), Error);
  CHECK_THROWS_AS(run_command("no-such-command", scene), Error);
}

TEST_CASE("scene declarations resolve") {
  auto scene = Scene::load(json::parse(kScene), Config{});
  CHECK(scene.manifolds.size() == 2);
  CHECK(scene.nets.count("gu") == 1);
  CHECK(scene.point("up", "t").p.at(0.01).x[0] == doctest::Approx(std::sin(0.31)));
  CHECK(scene.number("r", "t").at(0.25) == doctest::Approx(4.0));
  CHECK(scene.net("s1_jump", "t").net.tag() == "s1_jump");
  CHECK(scene.region("K", "t").K.pieces.size() == 1);
}

TEST_CASE("every command runs on a scene") {
  CHECK_THROWS_WITH_AS(run("check-moderate", {{"net", "u"}}), doctest::Contains("default region"), Error);
  CHECK(run("check-moderate", {{"net", "sigma_sin"}}) == Status::Pass);
  CHECK(run("check-moderate", {{"net", "a"}, {"K", "K"}}) == Status::Pass);
  CHECK(run("check-cbounded", {{"net", "u"}, {"K", "K"}}) == Status::Pass);
  CHECK(run("check-cbounded", {{"net", "epsilon_into_0_2"}}) == Status::Fail);
  CHECK(run("check-single-chart", {{"net", "a"}, {"K", "K"}}) == Status::Pass);
  CHECK(run("check-equiv0", {{"u", "u"}, {"v", "v"}, {"K", "K"}}) == Status::Pass);
  CHECK(run("check-equiv0", {{"u", "u"}, {"v", "w"}, {"K", "K"}}) == Status::Fail);
  CHECK(run("check-equiv", {{"u", "u"}, {"v", "v"}, {"Ks", {"K", "L"}}}) == Status::Pass);
  CHECK(run("check-equiv", {{"u", "u"}, {"v", "w"}, {"K", "K"}}) == Status::Fail);
  CHECK(run("eval-point", {{"net", "u"}, {"point", "p"}}) == Status::Pass);
  CHECK(run("eval-point", {{"net", "u"}, {"point", "p"}, {"compare", "up"}}) == Status::Pass);
  CHECK(run("eval-point", {{"net", "u"}, {"point", "q"}, {"compare", "up"}}) == Status::Pass);
  CHECK(run("eval-point", {{"net", "u"}, {"point", "p"}, {"compare", "p"}}) == Status::Fail);
  CHECK(run("compose", {{"outer", "g"}, {"inner", "u"}, {"K", "K"}, {"expect", "closed"}}) == Status::Pass);
  CHECK(run("check-equiv", {{"u", "gu"}, {"v", "closed"}, {"K", "K"}}) == Status::Pass);
  CHECK(run("tangent", {{"net", "u"}, {"K", "L"}}) == Status::Pass);
  CHECK(run("vb-check", {{"hom", "Tu"}, {"L", "K"}}) == Status::Pass);
  CHECK(run("vb-check", {{"hom", "Tu"}, {"L", "K"}, {"other", "Tv"}}) == Status::Pass);
  CHECK(run("vb-check", {{"hom", "Tu"}, {"L", "K"}, {"other", "Tw"}, {"order0", true}}) == Status::Fail);
  CHECK(run("vb-eval", {{"hom", "Tu"}, {"vbpoint", "e"}, {"compare", "Te2"}}) == Status::Pass);
  CHECK(run("vb-eval", {{"hom", "Tu"}, {"vbpoint", "e"}}) == Status::Pass);
  CHECK(run("vb-eval", {{"section", "xi"}, {"point", "p"}, {"compare", "xp"}}) == Status::Pass);
  CHECK(run("tensor-insert", {{"tensor", "g2"}, {"omegas", json::array()}, {"xis", {"xi", "xi"}}, {"point", "p"}}) ==
        Status::Pass);
  CHECK(run("tensor-insert", {{"tensor", "g2"},
                              {"omegas", json::array()},
                              {"xis", {"xi", "xi"}},
                              {"point", "p"},
                              {"compare", {{"omegas", json::array()}, {"xis", {"xi", "big"}}}}}) == Status::Fail);
}

TEST_CASE("command records carry series for CSV export") {
  auto scene = Scene::load(json::parse(kScene), Config{});
  scene.args = {{"net", "u"}, {"K", "K"}};
  auto r = run_command("check-moderate", scene);
  CHECK_FALSE(r.series.empty());
  for (const auto& [name, csv] : r.series) CHECK(csv.rfind("eps,sup\n", 0) == 0);
  CHECK(command_names().size() == 11);
}
