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

#include "gcm/gcm.h"

#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

const char* kSpec = R"({
  "manifolds": {"R": {"type": "euclidean", "dim": 1}, "S1": {"type": "circle"}},
  "regions": {"K": {"manifold": "R", "interval": [-1, 1]}},
  "nets": {
    "u": {"src": "R", "dst": "S1", "angle": ["mul", "pi", ["h_eps", "x"]]},
    "w": {"src": "R", "dst": "S1", "angle": ["add", ["mul", "pi", ["h_eps", "x"]], "eps"]}
  },
  "args": {"u": "u", "v": "w", "K": "K"}
})";

struct Ctx {
  gcm_context* ctx = nullptr;
  explicit Ctx(const char* cfg = nullptr) { REQUIRE(gcm_context_create(cfg, &ctx) == GCM_OK); }
  ~Ctx() { gcm_context_destroy(ctx); }
};

struct Result {
  gcm_result* r = nullptr;
  ~Result() { gcm_result_destroy(r); }
};

json gallery_record(const char* cfg) {
  Ctx c(cfg);
  Result res;
  REQUIRE(gcm_gallery_run(c.ctx, nullptr, 0, &res.r) == GCM_OK);
  return json::parse(gcm_result_json(res.r));
}

}  // namespace

TEST_CASE("version, status strings and command list") {
  CHECK(std::strlen(gcm_version()) > 0);
  CHECK(std::string(gcm_status_string(GCM_OK)) != std::string(gcm_status_string(GCM_ERR_SPEC)));
  auto names = json::parse(gcm_commands());
  CHECK(names.size() == 11);
  CHECK(std::find(names.begin(), names.end(), "check-equiv0") != names.end());
}

TEST_CASE("null arguments are rejected") {
  gcm_context* ctx = nullptr;
  CHECK(gcm_context_create(nullptr, nullptr) == GCM_ERR_NULL_ARGUMENT);
  CHECK(std::strlen(gcm_last_error()) > 0);
  Ctx c;
  gcm_result* r = nullptr;
  CHECK(gcm_run_check(nullptr, "check-moderate", kSpec, &r) == GCM_ERR_NULL_ARGUMENT);
  CHECK(gcm_run_check(c.ctx, nullptr, kSpec, &r) == GCM_ERR_NULL_ARGUMENT);
  CHECK(gcm_run_check(c.ctx, "check-moderate", nullptr, &r) == GCM_ERR_NULL_ARGUMENT);
  CHECK(gcm_run_check(c.ctx, "check-moderate", kSpec, nullptr) == GCM_ERR_NULL_ARGUMENT);
  CHECK(gcm_report(c.ctx, nullptr, &r) == GCM_ERR_NULL_ARGUMENT);
  CHECK(r == nullptr);
  CHECK(std::string(gcm_result_json(nullptr)).empty());
  CHECK(gcm_result_series_count(nullptr) == 0);
  CHECK(gcm_result_verdict(nullptr) == GCM_INCONCLUSIVE);
  gcm_context_destroy(nullptr);
  gcm_result_destroy(nullptr);
  (void)ctx;
}

TEST_CASE("configuration errors") {
  gcm_context* ctx = nullptr;
  CHECK(gcm_context_create("{", &ctx) == GCM_ERR_PARSE);
  CHECK(gcm_context_create(R"({"bogus": 1})", &ctx) == GCM_ERR_INVALID_ARGUMENT);
  CHECK(std::string(gcm_last_error()).find("bogus") != std::string::npos);
  CHECK(gcm_context_create(R"({"r2_min": 2})", &ctx) == GCM_ERR_INVALID_ARGUMENT);
  CHECK(ctx == nullptr);
  Ctx c(R"({"k_max": 2})");
  CHECK(json::parse(gcm_context_config(c.ctx))["k_max"] == 2);
}

TEST_CASE("spec errors carry their location") {
  Ctx c;
  gcm_result* r = nullptr;
  CHECK(gcm_run_check(c.ctx, "check-moderate", "not json", &r) == GCM_ERR_PARSE);
  CHECK(gcm_run_check(c.ctx, "check-moderate", R"({"args": {"net": "nope", "K": "K"}})", &r) == GCM_ERR_SPEC);
  CHECK(std::string(gcm_last_error()).find("args.net") != std::string::npos);
  CHECK(gcm_run_check(c.ctx, "no-such-command", kSpec, &r) == GCM_ERR_INVALID_ARGUMENT);
  CHECK(r == nullptr);
}

TEST_CASE("check results expose verdict, record, text and series") {
  Ctx c;
  Result pass, fail;
  REQUIRE(gcm_run_check(c.ctx, "check-equiv0", kSpec, &pass.r) == GCM_OK);
  CHECK(gcm_result_verdict(pass.r) == GCM_FAIL);
  REQUIRE(gcm_run_check(c.ctx, "check-single-chart", R"({"args": {"net": "s1_jump"}})", &fail.r) == GCM_OK);
  CHECK(gcm_result_verdict(fail.r) == GCM_PASS);

  auto rec = json::parse(gcm_result_json(pass.r));
  CHECK(rec["check"] == "equiv0");
  CHECK(rec["status"] == "Fail");
  CHECK(rec["slope"].get<double>() == doctest::Approx(1.0).epsilon(0.1));
  CHECK(rec.contains("witness"));
  CHECK(std::string(gcm_result_text(pass.r)).find("Fail") != std::string::npos);

  const std::size_t n = gcm_result_series_count(pass.r);
  CHECK(n > 0);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(std::string(gcm_result_series_name(pass.r, i)).size() > 0);
    CHECK(std::string(gcm_result_series_csv(pass.r, i)).rfind("eps,sup\n", 0) == 0);
  }
  CHECK(gcm_result_series_name(pass.r, n) == nullptr);
  CHECK(gcm_result_series_csv(pass.r, n) == nullptr);

  Result rep;
  REQUIRE(gcm_report(c.ctx, gcm_result_json(pass.r), &rep.r) == GCM_OK);
  CHECK(std::string(gcm_result_text(rep.r)) == std::string(gcm_result_text(pass.r)));
}

TEST_CASE("results are deterministic") {
  Ctx c;
  Result a, b;
  REQUIRE(gcm_run_check(c.ctx, "check-equiv", kSpec, &a.r) == GCM_OK);
  REQUIRE(gcm_run_check(c.ctx, "check-equiv", kSpec, &b.r) == GCM_OK);
  CHECK(std::string(gcm_result_json(a.r)) == std::string(gcm_result_json(b.r)));
}

TEST_CASE("gallery list and selected runs") {
  Ctx c;
  Result list;
  REQUIRE(gcm_gallery_list(c.ctx, &list.r) == GCM_OK);
  auto entries = json::parse(gcm_result_json(list.r));
  CHECK(entries.size() == 10);
  const char* names[] = {"sigma_sin", "winder"};
  Result run;
  REQUIRE(gcm_gallery_run(c.ctx, names, 2, &run.r) == GCM_OK);
  CHECK(gcm_result_verdict(run.r) == GCM_PASS);
  CHECK(json::parse(gcm_result_json(run.r))["entries"].size() == 2);
  const char* bad[] = {"no_such_entry"};
  gcm_result* r = nullptr;
  CHECK(gcm_gallery_run(c.ctx, bad, 1, &r) == GCM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("higher derivative order never turns an expected Pass into Fail") {
  auto rec = gallery_record(R"({"k_max": 4})");
  int checked = 0;
  for (const auto& e : rec["entries"]) {
    CHECK_FALSE(e.contains("error"));
    for (const auto& c : e["checks"]) {
      if (c["expected"] != "Pass") continue;
      ++checked;
      INFO(e["name"].get<std::string>() << ": " << c["label"].get<std::string>());
      CHECK(c["actual"] != "Fail");
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("a coarse grid reproduces expectations or stays Inconclusive") {
  auto rec = gallery_record(R"({"eps_grid": {"base": 0.5, "k_min": 2, "k_max": 8}})");
  for (const auto& e : rec["entries"]) {
    CHECK_FALSE(e.contains("error"));
    for (const auto& c : e["checks"]) {
      INFO(e["name"].get<std::string>() << ": " << c["label"].get<std::string>());
      CHECK((c["actual"] == c["expected"] || c["actual"] == "Inconclusive"));
    }
  }
}
