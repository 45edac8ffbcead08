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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcm/gcm.h"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitError = 3;

struct ConfigFlag {
  const char* flag;
  const char* path;  // "a" or "a.b" inside the config object
  const char* help;
};

const std::vector<ConfigFlag> kConfigFlags = {
    {"--eps-base", "eps_grid.base", "grid ratio, eps_k = base^k"},
    {"--eps-k-min", "eps_grid.k_min", "first grid exponent"},
    {"--eps-k-max", "eps_grid.k_max", "last grid exponent"},
    {"--lattice-density", "lattice_density", "samples per axis of a region"},
    {"--k-max", "k_max", "highest derivative order probed"},
    {"--n-cap", "n_cap", "largest growth exponent accepted as moderate"},
    {"--m-probe", "m_probe", "decay exponent required for negligibility"},
    {"--r2-min", "r2_min", "minimum fit quality"},
    {"--vanish-tol", "vanish_tol", "tail level accepted as vanishing"},
    {"--margin-min", "margin_min", "boundary-escape threshold"},
    {"--m-fail", "m_fail", "decay slopes at or below this fail negligibility"},
    {"--slope-tol", "slope_tol", "slack when reading exponents off a slope"},
    {"--residual-tol", "residual_tol", "max log residual of a clean fit"},
    {"--noise-floor", "noise_floor", "relative size of differences counted as zero"},
    {"--pad-fraction", "pad_fraction", "padding of image boxes"},
    {"--random-extra", "random_extra", "extra seeded random points per region"},
    {"--seed", "seed", "seed of the random points"},
};

struct ArgFlag {
  const char* flag;
  const char* key;
  const char* help;
  bool multi = false;
};

const std::vector<ArgFlag> kArgFlags = {
    {"--net", "net", "net name (spec or gallery)"},
    {"--u", "u", "first net"},
    {"--v", "v", "second net"},
    {"--K", "K", "compact region name"},
    {"--Ks", "Ks", "compact region names", true},
    {"--metric", "metric", "manifold whose metric measures distances"},
    {"--point", "point", "generalized point name"},
    {"--compare", "compare", "point, vb-point to compare against"},
    {"--outer", "outer", "outer net of a composition"},
    {"--inner", "inner", "inner net of a composition"},
    {"--expect", "expect", "net the composite should be equivalent to"},
    {"--hom", "hom", "vb-homomorphism name"},
    {"--other", "other", "second vb-homomorphism"},
    {"--L", "L", "compact region of a vb check"},
    {"--vbpoint", "vbpoint", "vb-point name"},
    {"--section", "section", "section name"},
    {"--tensor", "tensor", "tensor field name"},
    {"--omega", "omegas", "one-form argument", true},
    {"--xi", "xis", "vector field argument", true},
};

struct Options {
  std::string config_file;
  std::string out_dir;
  std::string spec_file;
  bool table = false;
  bool order0 = false;
  std::map<std::string, std::string> config;
  std::map<std::string, std::string> args;
  std::map<std::string, std::vector<std::string>> multi;
  std::vector<std::string> raw_args;
  std::vector<std::string> names;
  std::string report_file;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

json scalar(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return text;
  }
}

void set_path(json& j, const std::string& path, json v) {
  const auto dot = path.find('.');
  if (dot == std::string::npos) {
    j[path] = std::move(v);
  } else {
    set_path(j[path.substr(0, dot)], path.substr(dot + 1), std::move(v));
  }
}

void merge(json& into, const json& from) {
  for (const auto& [k, v] : from.items()) {
    if (v.is_object() && into.contains(k) && into[k].is_object()) {
      merge(into[k], v);
    } else {
      into[k] = v;
    }
  }
}

json flag_overrides(const Options& o) {
  json j = json::object();
  for (const auto& f : kConfigFlags) {
    auto it = o.config.find(f.path);
    if (it != o.config.end() && !it->second.empty()) set_path(j, f.path, scalar(it->second));
  }
  return j;
}

json context_config(const Options& o) {
  json cfg = o.config_file.empty() ? json::object() : json::parse(read_file(o.config_file));
  merge(cfg, flag_overrides(o));
  return cfg;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--config", o.config_file, "JSON file with Config overrides")->check(CLI::ExistingFile);
  app->add_option("--out", o.out_dir, "directory for verdict JSON and per-series CSV");
  app->add_flag("--table", o.table, "print a plain-text report instead of JSON");
  for (const auto& f : kConfigFlags) app->add_option(f.flag, o.config[f.path], f.help);
}

int fail(const std::string& what) {
  std::cerr << "gcm: " << what << "\n";
  return kExitError;
}

int status_error(gcm_status s) {
  return fail(std::string(gcm_status_string(s)) + ": " + gcm_last_error());
}

int exit_code(gcm_verdict v) {
  switch (v) {
    case GCM_PASS: return 0;
    case GCM_FAIL: return 1;
    case GCM_INCONCLUSIVE: return 2;
  }
  return kExitError;
}

/// Prints the result and writes --out files; returns the process exit code.
int emit(const Options& o, const std::string& name, gcm_result* r) {
  if (o.table) {
    std::cout << gcm_result_text(r);
  } else {
    std::cout << gcm_result_json(r) << "\n";
  }
  if (!o.out_dir.empty()) {
    const fs::path dir(o.out_dir);
    fs::create_directories(dir);
    write_file(dir / (name + ".json"), std::string(gcm_result_json(r)) + "\n");
    for (size_t i = 0; i < gcm_result_series_count(r); ++i)
      write_file(dir / (std::string(gcm_result_series_name(r, i)) + ".csv"), gcm_result_series_csv(r, i));
  }
  const int code = exit_code(gcm_result_verdict(r));
  gcm_result_destroy(r);
  return code;
}

struct Context {
  gcm_context* ctx = nullptr;
  ~Context() { gcm_context_destroy(ctx); }
};

int run_check(const std::string& command, const Options& o) {
  json spec = o.spec_file.empty() ? json::object() : json::parse(read_file(o.spec_file));
  if (!spec.is_object()) return fail("spec must be a JSON object");
  json& args = spec["args"];
  if (args.is_null()) args = json::object();
  for (const auto& [k, v] : o.args)
    if (!v.empty()) args[k] = v;
  for (const auto& [k, v] : o.multi)
    if (!v.empty()) args[k] = v;
  if (o.order0) args["order0"] = true;
  for (const auto& kv : o.raw_args) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) return fail("--arg expects key=value, got '" + kv + "'");
    args[kv.substr(0, eq)] = scalar(kv.substr(eq + 1));
  }
  if (spec.contains("config")) merge(spec["config"], flag_overrides(o));

  Context c;
  if (auto s = gcm_context_create(context_config(o).dump().c_str(), &c.ctx); s != GCM_OK) return status_error(s);
  gcm_result* r = nullptr;
  if (auto s = gcm_run_check(c.ctx, command.c_str(), spec.dump().c_str(), &r); s != GCM_OK) return status_error(s);
  return emit(o, command, r);
}

int run_gallery(bool list, const Options& o) {
  Context c;
  if (auto s = gcm_context_create(context_config(o).dump().c_str(), &c.ctx); s != GCM_OK) return status_error(s);
  gcm_result* r = nullptr;
  if (list) {
    if (auto s = gcm_gallery_list(c.ctx, &r); s != GCM_OK) return status_error(s);
    std::cout << (o.table ? gcm_result_text(r) : std::string(gcm_result_json(r)) + "\n");
    gcm_result_destroy(r);
    return 0;
  }
  std::vector<const char*> names;
  for (const auto& n : o.names) names.push_back(n.c_str());
  if (auto s = gcm_gallery_run(c.ctx, names.data(), names.size(), &r); s != GCM_OK) return status_error(s);
  return emit(o, "gallery", r);
}

int run_report(const Options& o) {
  Context c;
  if (auto s = gcm_context_create(nullptr, &c.ctx); s != GCM_OK) return status_error(s);
  gcm_result* r = nullptr;
  if (auto s = gcm_report(c.ctx, read_file(o.report_file).c_str(), &r); s != GCM_OK) return status_error(s);
  std::cout << gcm_result_text(r);
  const int code = exit_code(gcm_result_verdict(r));
  gcm_result_destroy(r);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks for generalized maps between manifolds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gcm_version());
  Options o;

  const json commands = json::parse(gcm_commands());
  std::vector<std::pair<CLI::App*, std::string>> checks;
  for (const auto& cmd : commands) {
    const auto name = cmd.get<std::string>();
    auto* sub = app.add_subcommand(name, "run " + name + " on a JSON description");
    add_common(sub, o);
    sub->add_option("--spec", o.spec_file, "JSON description of manifolds, nets, regions, ...")
        ->check(CLI::ExistingFile);
    for (const auto& a : kArgFlags) {
      if (a.multi) {
        sub->add_option(a.flag, o.multi[a.key], a.help);
      } else {
        sub->add_option(a.flag, o.args[a.key], a.help);
      }
    }
    sub->add_flag("--order0", o.order0, "vb-check: compare zeroth order only");
    sub->add_option("--arg", o.raw_args, "extra argument key=value (value parsed as JSON when possible)");
    checks.emplace_back(sub, name);
  }

  auto* gallery = app.add_subcommand("gallery", "curated nets with expected verdicts");
  gallery->require_subcommand(1);
  auto* list = gallery->add_subcommand("list", "list gallery entries");
  add_common(list, o);
  auto* run = gallery->add_subcommand("run", "run gallery entries and compare with their expected verdicts");
  add_common(run, o);
  run->add_option("names", o.names, "entries to run (default: all)");

  auto* report = app.add_subcommand("report", "render a verdict or gallery JSON file as a table");
  report->add_option("file", o.report_file, "verdict JSON")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [sub, name] : checks)
      if (sub->parsed()) return run_check(name, o);
    if (list->parsed()) return run_gallery(true, o);
    if (run->parsed()) return run_gallery(false, o);
    if (report->parsed()) return run_report(o);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return kExitError;
}
