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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gcm/gmap.hpp"
#include "gcm/gpoints.hpp"
#include "gcm/vbundle.hpp"
#include "records.hpp"

namespace gcm {

/// A registered closed-form net with the region it is probed on.
struct NamedNet {
  std::string name;
  std::string description;
  Manifold src, dst;
  MapNet net;
  CompactRegion K;
};

std::vector<NamedNet> gallery_nets(const Config& cfg);
std::optional<NamedNet> find_gallery_net(const std::string& name, const Config& cfg);

/// Net pair with a known answer; defect_order is the exponent of sup d(u, v)
/// for non-equivalent pairs.
struct NetPair {
  std::string name;
  Manifold src, dst;
  MapNet u, v;
  CompactRegion K;
  bool equivalent = true;
  double defect_order = 0.0;
};

std::vector<NetPair> equivalence_corpus(const Config& cfg);

/// Smooth f: X -> Y and g: Y -> Z with the closed form of g o f and a
/// negligible perturbation of f.
struct ComposePair {
  std::string name;
  Manifold X, Y, Z;
  MapNet f, g, gf, f_perturbed;
  CompactRegion K;
};

std::vector<ComposePair> composition_corpus(const Config& cfg);

/// Arguments (omegas, xis) and (omegas2, xis2) agree at p up to a negligible
/// amount, or differ at order defect_order when agree is false.
struct TensorPair {
  std::string name;
  SectionNet t;
  std::vector<SectionNet> omegas, xis, omegas2, xis2;
  GenPoint p;
  bool agree = true;
  double defect_order = 0.0;
};

std::vector<TensorPair> tensor_corpus(const Config& cfg);

struct SectionCase {
  std::string name;
  Manifold base;
  SectionNet s;
  CompactRegion K;
  bool negligible = true;
  double slope = 0.0;  // decay exponent of sup_K |s| when not negligible
};

std::vector<SectionCase> section_corpus(const Config& cfg);

/// Seeded align/combine instance over one of the built-in bundles.
struct VBInstance {
  std::string name;
  Manifold base;
  BundlePtr bundle;
  VBHomNet hom;
  VBPoint e, e2;
  GenNumber r, s;
};

std::vector<VBInstance> vbpoint_instances(const Config& cfg, int count, std::uint64_t seed);
/// Alignment, linearity, distributivity and zero-test checks; all Pass on a
/// correct implementation.
std::vector<Verdict> check_vbpoint_instance(const VBInstance& inst, const Config& cfg);

/// One expected verdict of a gallery entry.
struct Expectation {
  std::string label;
  Status expected = Status::Pass;
  std::string oracle;
  Verdict actual;
  bool match() const { return actual.status == expected; }
};

struct GalleryEntry {
  std::string name;
  std::string description;
  std::function<std::vector<Expectation>(const Config&)> run;
};

/// Entries sorted by name.
const std::vector<GalleryEntry>& gallery();

json gallery_list();

struct GalleryRun {
  json record;
  bool all_match = true;
  std::vector<std::vector<Expectation>> results;  // per selected entry, in name order
};

/// Runs the named entries (all when empty) concurrently; the record lists
/// them in name order. Throws InvalidArgument on unknown names.
GalleryRun gallery_run(const Config& cfg, const std::vector<std::string>& names = {});

}  // namespace gcm
