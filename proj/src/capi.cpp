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

#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "gallery.hpp"
#include "gcm/error.hpp"
#include "gcm/gcm.h"
#include "records.hpp"
#include "scene.hpp"

struct gcm_context {
  gcm::Config cfg;
  std::string config_text;
};

struct gcm_result {
  gcm_verdict verdict = GCM_INCONCLUSIVE;
  std::string json_text;
  std::string text;
  std::vector<std::pair<std::string, std::string>> series;
};

namespace {

thread_local std::string last_error;

gcm_status from_code(gcm::ErrorCode c) {
  using gcm::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return GCM_ERR_INVALID_ARGUMENT;
    case ErrorCode::SpecError: return GCM_ERR_SPEC;
    case ErrorCode::Domain: return GCM_ERR_DOMAIN;
    case ErrorCode::TooFewSamples: return GCM_ERR_TOO_FEW_SAMPLES;
    case ErrorCode::TypeMismatch:
    case ErrorCode::MissingFiberMetric: return GCM_ERR_TYPE_MISMATCH;
    case ErrorCode::NoOverlap:
    case ErrorCode::OutOfDomain:
    case ErrorCode::MarginTooSmall:
    case ErrorCode::ChartEscape:
    case ErrorCode::ChartMismatch:
    case ErrorCode::SupportEscape:
    case ErrorCode::NoSharedChart:
    case ErrorCode::BaseMismatch:
    case ErrorCode::SingleChartMissing: return GCM_ERR_GEOMETRY;
  }
  return GCM_ERR_INTERNAL;
}

template <class F>
gcm_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return GCM_OK;
  } catch (const gcm::Error& e) {
    last_error = e.what();
    return from_code(e.code());
  } catch (const nlohmann::ordered_json::parse_error& e) {
    last_error = e.what();
    return GCM_ERR_PARSE;
  } catch (const nlohmann::ordered_json::exception& e) {
    last_error = std::string("SpecError: ") + e.what();
    return GCM_ERR_SPEC;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GCM_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return GCM_ERR_INTERNAL;
  }
}

gcm_status null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return GCM_ERR_NULL_ARGUMENT;
}

gcm_verdict to_verdict(gcm::Status s) {
  switch (s) {
    case gcm::Status::Pass: return GCM_PASS;
    case gcm::Status::Fail: return GCM_FAIL;
    case gcm::Status::Inconclusive: return GCM_INCONCLUSIVE;
  }
  return GCM_INCONCLUSIVE;
}

gcm::json parse(const char* text) { return gcm::json::parse(text); }

}  // namespace

extern "C" {

const char* gcm_version(void) { return "0.1.0"; }

const char* gcm_status_string(gcm_status s) {
  switch (s) {
    case GCM_OK: return "ok";
    case GCM_ERR_NULL_ARGUMENT: return "null argument";
    case GCM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GCM_ERR_PARSE: return "JSON parse error";
    case GCM_ERR_SPEC: return "spec error";
    case GCM_ERR_DOMAIN: return "domain error";
    case GCM_ERR_GEOMETRY: return "geometry error";
    case GCM_ERR_TYPE_MISMATCH: return "type mismatch";
    case GCM_ERR_TOO_FEW_SAMPLES: return "too few samples";
    case GCM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gcm_last_error(void) { return last_error.c_str(); }

gcm_status gcm_context_create(const char* config_json, gcm_context** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto ctx = std::make_unique<gcm_context>();
    if (config_json) ctx->cfg = gcm::config_from_json(parse(config_json));
    gcm::validate_config(ctx->cfg);
    ctx->config_text = gcm::config_json(ctx->cfg).dump(2);
    *out = ctx.release();
  });
}

void gcm_context_destroy(gcm_context* ctx) { delete ctx; }

const char* gcm_context_config(const gcm_context* ctx) { return ctx ? ctx->config_text.c_str() : ""; }

const char* gcm_commands(void) {
  static const std::string names = gcm::json(gcm::command_names()).dump();
  return names.c_str();
}

gcm_status gcm_run_check(gcm_context* ctx, const char* command, const char* spec_json, gcm_result** out) {
  if (!ctx) return null_arg("ctx");
  if (!command) return null_arg("command");
  if (!spec_json) return null_arg("spec_json");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto scene = gcm::Scene::load(parse(spec_json), ctx->cfg);
    auto r = gcm::run_command(command, scene);
    auto res = std::make_unique<gcm_result>();
    res->verdict = to_verdict(r.status);
    res->json_text = r.record.dump(2);
    res->text = gcm::render_report(r.record);
    res->series = std::move(r.series);
    *out = res.release();
  });
}

gcm_status gcm_gallery_list(gcm_context* ctx, gcm_result** out) {
  if (!ctx) return null_arg("ctx");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto res = std::make_unique<gcm_result>();
    const auto list = gcm::gallery_list();
    res->verdict = GCM_PASS;
    res->json_text = list.dump(2);
    for (const auto& e : list) res->text += e["name"].get<std::string>() + "\t" + e["description"].get<std::string>() + "\n";
    *out = res.release();
  });
}

gcm_status gcm_gallery_run(gcm_context* ctx, const char* const* names, size_t count, gcm_result** out) {
  if (!ctx) return null_arg("ctx");
  if (!out) return null_arg("out");
  if (count > 0 && !names) return null_arg("names");
  *out = nullptr;
  return guarded([&] {
    std::vector<std::string> selected;
    for (size_t i = 0; i < count; ++i) {
      if (!names[i]) throw gcm::Error(gcm::ErrorCode::InvalidArgument, "null gallery entry name");
      selected.emplace_back(names[i]);
    }
    auto run = gcm::gallery_run(ctx->cfg, selected);
    auto res = std::make_unique<gcm_result>();
    res->verdict = run.all_match ? GCM_PASS : GCM_FAIL;
    res->json_text = run.record.dump(2);
    res->text = gcm::render_report(run.record);
    *out = res.release();
  });
}

gcm_status gcm_report(gcm_context* ctx, const char* record_json, gcm_result** out) {
  if (!ctx) return null_arg("ctx");
  if (!record_json) return null_arg("record_json");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const auto record = parse(record_json);
    auto res = std::make_unique<gcm_result>();
    res->text = gcm::render_report(record);
    res->json_text = record.dump(2);
    const std::string status = record.contains("entries") ? (record.value("all_match", false) ? "Pass" : "Fail")
                                                           : record.value("status", "Inconclusive");
    res->verdict = status == "Pass" ? GCM_PASS : status == "Fail" ? GCM_FAIL : GCM_INCONCLUSIVE;
    *out = res.release();
  });
}

gcm_verdict gcm_result_verdict(const gcm_result* r) { return r ? r->verdict : GCM_INCONCLUSIVE; }
const char* gcm_result_json(const gcm_result* r) { return r ? r->json_text.c_str() : ""; }
const char* gcm_result_text(const gcm_result* r) { return r ? r->text.c_str() : ""; }
size_t gcm_result_series_count(const gcm_result* r) { return r ? r->series.size() : 0; }
const char* gcm_result_series_name(const gcm_result* r, size_t i) {
  return r && i < r->series.size() ? r->series[i].first.c_str() : nullptr;
}
const char* gcm_result_series_csv(const gcm_result* r, size_t i) {
  return r && i < r->series.size() ? r->series[i].second.c_str() : nullptr;
}
void gcm_result_destroy(gcm_result* r) { delete r; }

}  // extern "C"
