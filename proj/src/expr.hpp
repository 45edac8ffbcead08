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

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "gcm/jet.hpp"

namespace gcm {

/// Closed-form expression in the coordinates x0, x1, ... and the net
/// parameter eps, written as a JSON S-expression:
///
///   1.5 | "x0" | "x" | "eps" | "pi" | ["op", arg, ...]
///
/// ops: add sub mul div neg pow sin cos tanh exp log sqrt atan bump h_eps.
/// bump(t) = exp(-1/(1-t^2)) on |t| < 1 and 0 elsewhere; h_eps(t) is the
/// regularized sign (1+eps)/2 (tanh t + tanh(t/eps)).
class Expr {
 public:
  Expr() = default;
  /// Throws SpecError naming the location on malformed input.
  static Expr parse(const nlohmann::json& j, const std::string& where);

  Jet eval(std::span<const Jet> x, double eps) const;
  double eval(std::span<const double> x, double eps) const;
  /// Largest coordinate index referenced, or -1.
  int max_var() const;

 private:
  struct Node;
  std::shared_ptr<const Node> root_;
};

std::vector<Expr> parse_exprs(const nlohmann::json& j, const std::string& where);

}  // namespace gcm
