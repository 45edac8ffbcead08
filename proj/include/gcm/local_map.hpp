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
#include <span>
#include <vector>

#include "gcm/jet.hpp"

namespace gcm {

using Vec = std::vector<double>;
using JetFn = std::function<JetVec(std::span<const Jet>)>;
using ValueFn = std::function<Vec(std::span<const double>)>;
using DomainFn = std::function<bool(std::span<const double>)>;

/// Smooth map between open subsets of R^n and R^m with a derivative oracle.
///
/// Closed-form maps supply a jet function and get exact partials. Maps that
/// only supply values fall back to nested 4th-order central differences with
/// step 1e-4 * (1 + |x|).
class LocalMap {
 public:
  LocalMap() = default;
  static LocalMap exact(int in_dim, int out_dim, JetFn fn, DomainFn domain = {});
  static LocalMap finite_difference(int in_dim, int out_dim, ValueFn fn, DomainFn domain = {},
                                    int max_order = 3);
  static LocalMap identity(int dim);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  bool has_exact_derivatives() const { return exact_; }
  bool in_domain(std::span<const double> x) const { return !domain_ || domain_(x); }

  Vec value(std::span<const double> x) const;
  /// Taylor expansion of every output component at x up to the given order.
  JetVec expand(std::span<const double> x, int order) const;
  /// Pushes general jets through the map (chain rule).
  JetVec apply(std::span<const Jet> x) const;

  /// Lower-order expansion computed purely from function values, independent
  /// of any jet implementation. Used as the fallback oracle and in tests.
  static JetVec fd_expand(const ValueFn& fn, std::span<const double> x, int out_dim, int order);

 private:
  int in_dim_ = 0;
  int out_dim_ = 0;
  bool exact_ = false;
  JetFn fn_;
  DomainFn domain_;
};

}  // namespace gcm
