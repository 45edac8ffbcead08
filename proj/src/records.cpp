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

#include "records.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "gcm/error.hpp"

namespace gcm {

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error(ErrorCode::InvalidArgument, "expected a number, got " + j.dump());
}

json series_json(const SupSeries& s) {
  json out = json::array();
  for (const auto& x : s.samples) {
    json row;
    row["eps"] = x.eps;
    row["sup"] = number(x.value());
    row["log_sup"] = number(x.log_sup);
    if (x.empty) row["empty"] = true;
    if (!x.location.empty()) row["location"] = x.location;
    out.push_back(std::move(row));
  }
  return out;
}

json verdict_json(const Verdict& v, const json& inputs) {
  json out;
  out["check"] = v.check;
  if (!v.label.empty()) out["label"] = v.label;
  if (!inputs.empty()) out["inputs"] = inputs;
  out["status"] = to_string(v.status);
  out["slope"] = v.estimate ? number(v.estimate->slope) : json();
  out["r2"] = v.estimate ? number(v.estimate->r2) : json();
  out["n_or_m"] = v.order ? number(*v.order) : json();
  out["samples"] = v.series ? series_json(*v.series) : json::array();
  if (v.witness) {
    json w;
    w["eps"] = v.witness->eps;
    w["location"] = v.witness->location;
    w["value"] = number(std::exp(v.witness->log_value));
    w["log_value"] = number(v.witness->log_value);
    out["witness"] = std::move(w);
  }
  out["notes"] = v.notes;
  if (v.estimate) {
    const auto& e = *v.estimate;
    json fit;
    fit["window"] = {e.window_begin, e.window_end};
    fit["intercept"] = number(e.intercept);
    fit["max_residual"] = number(e.max_residual);
    fit["step_slopes"] = {number(e.min_step_slope), number(e.max_step_slope)};
    fit["tail_zero"] = e.tail_zero;
    fit["overflow_count"] = e.overflow_count;
    fit["dropped_zeros"] = e.dropped_zeros;
    out["fit"] = std::move(fit);
  }
  if (!v.parts.empty()) {
    json parts = json::array();
    for (const auto& p : v.parts) parts.push_back(verdict_json(p));
    out["parts"] = std::move(parts);
  }
  return out;
}

std::string series_csv(const SupSeries& s) {
  std::string out = "eps,sup\n";
  char buf[64];
  for (const auto& x : s.samples) {
    const double v = x.value();
    std::snprintf(buf, sizeof buf, "%.17g,", x.eps);
    out += buf;
    if (std::isinf(v)) {
      out += v > 0 ? "inf" : "-inf";
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string file_stem(const std::string& label) {
  std::string out;
  for (char c : label) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '=' || c == '.';
    if (keep) {
      out += c;
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "series" : out;
}

namespace {

void collect(const Verdict& v, const std::string& name, std::vector<std::pair<std::string, std::string>>& out,
             std::set<std::string>& used) {
  if (v.series) {
    std::string stem = file_stem(name);
    for (int i = 2; used.count(stem); ++i) stem = file_stem(name) + "_" + std::to_string(i);
    used.insert(stem);
    out.emplace_back(stem, series_csv(*v.series));
  }
  for (std::size_t i = 0; i < v.parts.size(); ++i) {
    const auto& p = v.parts[i];
    collect(p, name + "." + (p.label.empty() ? std::to_string(i) : p.label), out, used);
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> collect_csv(const Verdict& v, const std::string& prefix) {
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> used;
  collect(v, prefix, out, used);
  return out;
}

namespace {

std::string cell(const json& j) {
  if (j.is_null()) return "-";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", j.get<double>());
    return buf;
  }
  return j.dump();
}

void render_verdict(const json& v, int depth, std::string& out) {
  char line[512];
  std::string name = std::string(static_cast<std::size_t>(2 * depth), ' ') + v.value("check", "?");
  if (v.contains("label")) name += " [" + v["label"].get<std::string>() + "]";
  std::snprintf(line, sizeof line, "%-64s %-12s %10s %8s %6s\n", name.c_str(), v.value("status", "?").c_str(),
                cell(v.value("slope", json())).c_str(), cell(v.value("r2", json())).c_str(),
                cell(v.value("n_or_m", json())).c_str());
  out += line;
  if (v.contains("witness")) {
    const auto& w = v["witness"];
    out += std::string(static_cast<std::size_t>(2 * depth + 2), ' ') + "witness eps=" + cell(w["eps"]) + " at " +
           w.value("location", "") + " value=" + cell(w["value"]) + "\n";
  }
  if (v.contains("parts"))
    for (const auto& p : v["parts"]) render_verdict(p, depth + 1, out);
}

}  // namespace

std::string render_report(const json& record) {
  std::string out;
  char line[512];
  if (record.contains("entries")) {
    std::size_t total = 0, matched = 0;
    std::snprintf(line, sizeof line, "%-28s %-6s %s\n", "entry", "match", "checks");
    out += line;
    for (const auto& e : record["entries"]) {
      std::size_t n = 0, ok = 0;
      for (const auto& c : e["checks"]) {
        ++n;
        ok += c.value("match", false) ? 1 : 0;
      }
      total += n;
      matched += ok;
      std::snprintf(line, sizeof line, "%-28s %-6s %zu/%zu\n", e.value("name", "?").c_str(),
                    e.value("match", false) ? "yes" : "NO", ok, n);
      out += line;
      if (e.contains("error")) out += "  error: " + e["error"].get<std::string>() + "\n";
      for (const auto& c : e["checks"])
        if (!c.value("match", false))
          out += "  mismatch: " + c.value("label", "") + " expected " + c.value("expected", "") + " got " +
                 c.value("actual", "") + "\n";
    }
    std::snprintf(line, sizeof line, "%zu/%zu checks match; %s\n", matched, total,
                  record.value("all_match", false) ? "all entries match" : "MISMATCH");
    out += line;
    return out;
  }
  if (!record.contains("check")) throw Error(ErrorCode::InvalidArgument, "report: not a verdict or gallery record");
  std::snprintf(line, sizeof line, "%-64s %-12s %10s %8s %6s\n", "check", "status", "slope", "r2", "N/m");
  out += line;
  render_verdict(record, 0, out);
  if (record.contains("compare")) render_verdict(record["compare"], 1, out);
  for (const auto& n : record.value("notes", json::array())) out += "note: " + cell(n) + "\n";
  return out;
}

json config_json(const Config& cfg) {
  json j;
  j["eps_grid"] = {{"base", cfg.eps_grid.base}, {"k_min", cfg.eps_grid.k_min}, {"k_max", cfg.eps_grid.k_max}};
  j["lattice_density"] = cfg.lattice_density;
  j["k_max"] = cfg.k_max;
  j["n_cap"] = cfg.n_cap;
  j["m_probe"] = cfg.m_probe;
  j["r2_min"] = cfg.r2_min;
  j["vanish_tol"] = cfg.vanish_tol;
  j["margin_min"] = cfg.margin_min;
  j["m_fail"] = cfg.m_fail;
  j["slope_tol"] = cfg.slope_tol;
  j["residual_tol"] = cfg.residual_tol;
  j["noise_floor"] = cfg.noise_floor;
  j["pad_fraction"] = cfg.pad_fraction;
  j["random_extra"] = cfg.random_extra;
  j["seed"] = cfg.seed;
  return j;
}

namespace {

template <class T>
void take(const json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw Error(ErrorCode::InvalidArgument, std::string("config.") + key + " must be a number");
  } else {
    if (!v.is_number_integer())
      throw Error(ErrorCode::InvalidArgument, std::string("config.") + key + " must be an integer");
  }
  field = v.get<T>();
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, where + " must be an object");
  for (const auto& [k, _] : j.items())
    if (!allowed.count(k)) throw Error(ErrorCode::InvalidArgument, "unknown key " + where + "." + k);
}

}  // namespace

Config config_from_json(const json& j, Config cfg) {
  check_keys(j,
             {"eps_grid", "lattice_density", "k_max", "n_cap", "m_probe", "r2_min", "vanish_tol", "margin_min",
              "m_fail", "slope_tol", "residual_tol", "noise_floor", "pad_fraction", "random_extra", "seed"},
             "config");
  if (j.contains("eps_grid")) {
    const auto& g = j.at("eps_grid");
    check_keys(g, {"base", "k_min", "k_max"}, "config.eps_grid");
    take(g, "base", cfg.eps_grid.base);
    take(g, "k_min", cfg.eps_grid.k_min);
    take(g, "k_max", cfg.eps_grid.k_max);
  }
  take(j, "lattice_density", cfg.lattice_density);
  take(j, "k_max", cfg.k_max);
  take(j, "n_cap", cfg.n_cap);
  take(j, "m_probe", cfg.m_probe);
  take(j, "r2_min", cfg.r2_min);
  take(j, "vanish_tol", cfg.vanish_tol);
  take(j, "margin_min", cfg.margin_min);
  take(j, "m_fail", cfg.m_fail);
  take(j, "slope_tol", cfg.slope_tol);
  take(j, "residual_tol", cfg.residual_tol);
  take(j, "noise_floor", cfg.noise_floor);
  take(j, "pad_fraction", cfg.pad_fraction);
  take(j, "random_extra", cfg.random_extra);
  take(j, "seed", cfg.seed);
  validate_config(cfg);
  return cfg;
}

void validate_config(const Config& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, std::string("config: ") + what);
  };
  require(c.eps_grid.base > 0 && c.eps_grid.base < 1, "eps_grid.base must lie in (0, 1)");
  require(c.eps_grid.k_min >= 0, "eps_grid.k_min must be >= 0");
  require(c.eps_grid.k_max - c.eps_grid.k_min + 1 >= 6, "eps_grid needs at least 6 points");
  require(c.eps_grid.k_max <= 60, "eps_grid.k_max must be <= 60");
  require(c.lattice_density >= 2 && c.lattice_density <= 1000, "lattice_density must lie in [2, 1000]");
  require(c.k_max >= 0 && c.k_max <= 6, "k_max must lie in [0, 6]");
  require(c.n_cap >= 0 && c.n_cap <= 100, "n_cap must lie in [0, 100]");
  require(c.m_probe >= 1 && c.m_probe <= 100, "m_probe must lie in [1, 100]");
  require(c.r2_min >= 0 && c.r2_min <= 1, "r2_min must lie in [0, 1]");
  require(c.vanish_tol > 0, "vanish_tol must be positive");
  require(c.margin_min >= 0 && c.margin_min < 0.5, "margin_min must lie in [0, 0.5)");
  require(c.m_fail >= 0 && c.m_fail <= c.m_probe, "m_fail must lie in [0, m_probe]");
  require(c.slope_tol >= 0 && c.slope_tol < 0.5, "slope_tol must lie in [0, 0.5)");
  require(c.residual_tol >= 0, "residual_tol must be >= 0");
  require(c.noise_floor >= 0 && c.noise_floor < 1e-3, "noise_floor must lie in [0, 1e-3)");
  require(c.pad_fraction >= 0 && c.pad_fraction <= 1, "pad_fraction must lie in [0, 1]");
  require(c.random_extra >= 0 && c.random_extra <= 100000, "random_extra must lie in [0, 100000]");
}

}  // namespace gcm
