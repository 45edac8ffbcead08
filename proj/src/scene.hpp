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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcm/gmap.hpp"
#include "gcm/gpoints.hpp"
#include "gcm/vbundle.hpp"
#include "records.hpp"

namespace gcm {

/// Objects declared by a JSON description:
///
///   { "config":    {...Config overrides...},
///     "manifolds": {"R": {"type": "euclidean", "dim": 1, "lo": [..], "hi": [..]},
///                   "S1": {"type": "circle"}, "S2": {"type": "sphere"},
///                   "U": {"type": "union" | "product", "of": ["R", "S1"]}},
///     "nets":      {"u": {"src": "R", "dst": "R", "from": "x", "to": "x", "expr": [e..]},
///                   "w": {"src": "R", "dst": "S1", "angle": e},
///                   "c": {"compose": ["outer", "inner"], "probes": ["K"]},
///                   "g": {"gallery": "s1_jump"}},
///     "regions":   {"K": {"manifold": "R", "pieces": [{"chart": "x", "lo": [0], "hi": [1]}],
///                         "density": 33} | {"manifold": "R", "interval": [0, 1]}},
///     "points":    {"p": {"manifold": "R", "chart": "x", "coords": [e(eps)..]}},
///     "numbers":   {"r": e(eps)},
///     "bundles":   {"TR": {"type": "tangent" | "cotangent" | "trivial" | "tensor",
///                          "base": "R", "rank": 2, "r": 0, "s": 2}},
///     "sections":  {"xi": {"bundle": "TR", "chart": "x", "coefficients": [e..]}},
///     "vbhoms":    {"Tu": {"tangent": "u", "src": "TR", "dst": "TR"},
///                   "A": {"base": "u", "src": "E", "dst": "F", "chart": "x", "matrix_part": [[e..]..]}},
///     "vbpoints":  {"e": {"bundle": "TR", "chart": "x", "base": [e(eps)..], "fiber": [e(eps)..]}},
///     "args":      {...command arguments...} }
///
/// Expressions e use the coordinates of the named chart. Entries may refer to
/// entries declared before them; net names that are not declared fall back
/// to the gallery nets.
struct Scene {
  struct Net {
    MapNet net;
    Manifold src, dst;
    std::optional<CompactRegion> K;
  };
  struct Region {
    Manifold manifold;
    CompactRegion K;
  };
  struct PointEntry {
    Manifold manifold;
    GenPoint p;
  };

  Config cfg;
  std::map<std::string, Manifold> manifolds;
  std::map<std::string, Net> nets;
  std::map<std::string, Region> regions;
  std::map<std::string, PointEntry> points;
  std::map<std::string, GenNumber> numbers;
  std::map<std::string, BundlePtr> bundles;
  std::map<std::string, SectionNet> sections;
  std::map<std::string, VBHomNet> vbhoms;
  std::map<std::string, VBPoint> vbpoints;
  json args = json::object();

  /// Throws SpecError naming the offending location.
  static Scene load(const json& spec, const Config& base);

  const Net& net(const std::string& name, const std::string& where);
  const Region& region(const std::string& name, const std::string& where) const;
  const PointEntry& point(const std::string& name, const std::string& where) const;
  const Manifold& manifold(const std::string& name, const std::string& where) const;
  const BundlePtr& bundle(const std::string& name, const std::string& where) const;
  const SectionNet& section(const std::string& name, const std::string& where) const;
  const VBHomNet& vbhom(const std::string& name, const std::string& where) const;
  const VBPoint& vbpoint(const std::string& name, const std::string& where) const;
  const GenNumber& number(const std::string& name, const std::string& where) const;
};

/// Result of one CLI command: a JSON record plus named CSV series.
struct CommandResult {
  json record;
  Status status = Status::Inconclusive;
  std::vector<std::pair<std::string, std::string>> series;
};

/// Runs check-moderate, check-cbounded, check-equiv, check-equiv0,
/// check-single-chart, eval-point, compose, tangent, vb-check, vb-eval or
/// tensor-insert on the scene's "args".
CommandResult run_command(const std::string& command, Scene& scene);

const std::vector<std::string>& command_names();

}  // namespace gcm
