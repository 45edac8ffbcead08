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

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gcm/config.hpp"

namespace gcm {

struct EpsGrid {
  EpsGridSpec spec;

  EpsGrid() = default;
  explicit EpsGrid(EpsGridSpec s);
  std::size_t size() const { return static_cast<std::size_t>(spec.k_max - spec.k_min + 1); }
  double at(std::size_t i) const;
  /// Decreasing list of eps values.
  std::vector<double> values() const;
  /// eps at the middle of the grid; "eps below the midpoint" selects the
  /// small-eps half used for image boxes.
  double midpoint() const;
};

/// One sampled supremum. Magnitudes live in log space so that
/// super-polynomial growth is representable; log_sup = -inf encodes an exact
/// zero and +inf an overflow of the underlying double evaluation.
struct Sample {
  double eps = 0.0;
  double log_sup = -std::numeric_limits<double>::infinity();
  bool empty = false;    // supremum over an empty admissible set
  std::string location;  // where the sup was attained

  double value() const;
  bool zero() const { return log_sup == -std::numeric_limits<double>::infinity(); }
  bool overflow() const { return log_sup == std::numeric_limits<double>::infinity(); }
};

struct SupSeries {
  std::vector<Sample> samples;  // eps strictly decreasing
  std::string context;

  void add(double eps, double value, std::string location = {}, bool empty = false);
  void add_log(double eps, double log_value, std::string location = {});
  std::size_t zero_count() const;
  std::size_t empty_count() const;
  bool all_zero() const;
  /// Checks the eps ordering invariant.
  void validate() const;
};

/// Least-squares slope of log(sup) against log(eps).
struct OrderEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
  std::size_t window_begin = 0;  // sample indices [begin, end)
  std::size_t window_end = 0;
  double max_residual = 0.0;     // largest |log residual| in the window
  double min_step_slope = 0.0;   // extreme slopes between neighbouring samples
  double max_step_slope = 0.0;
  bool tail_zero = false;        // window is exactly zero: slope = +inf
  std::size_t overflow_count = 0;
  std::size_t dropped_zeros = 0;
};

enum class Status { Pass, Fail, Inconclusive };
const char* to_string(Status s);

struct Witness {
  double eps = 0.0;
  std::string location;
  double log_value = 0.0;
};

struct Verdict {
  std::string check;
  std::string label;
  Status status = Status::Inconclusive;
  std::optional<OrderEstimate> estimate;
  std::optional<Witness> witness;
  std::optional<double> order;  // N for moderateness, the fitted m for decay
  std::vector<std::string> notes;
  std::optional<SupSeries> series;
  std::vector<Verdict> parts;

  bool pass() const { return status == Status::Pass; }
  bool fail() const { return status == Status::Fail; }
  /// Depth-first search for a part by label.
  const Verdict* find(const std::string& label) const;
};

/// Fits the last half of the usable (finite, positive) samples. Throws
/// TooFewSamples with fewer than six usable samples unless the tail is
/// exactly zero.
OrderEstimate fit_order(const SupSeries& series);

Verdict judge_moderate(const SupSeries& series, const Config& cfg);
Verdict judge_negligible(const SupSeries& series, const Config& cfg, std::optional<int> m_probe = {});
Verdict judge_vanishing(const SupSeries& series, const Config& cfg);

enum class Worst { MostNegativeSlope, SmallestSlope };
/// Fail if any part fails, Pass if all pass, otherwise Inconclusive. The
/// summary estimate is the worst one among the parts.
Verdict conjunction(std::string check, std::vector<Verdict> parts, Worst worst);

}  // namespace gcm
