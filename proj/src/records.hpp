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

#include <string>
#include <utility>
#include <vector>

#include "gcm/asymptotics.hpp"
#include "gcm/config.hpp"
#include "json.hpp"

namespace gcm {

using json = nlohmann::ordered_json;

/// Finite numbers as JSON numbers, infinities and NaN as "inf", "-inf", "nan".
json number(double v);
double number_from(const json& j);

/// Verdict record: {check, label, inputs, status, slope, r2, n_or_m, samples,
/// witness?, notes, fit?, parts?}.
json verdict_json(const Verdict& v, const json& inputs = json::object());
json series_json(const SupSeries& s);

/// "eps,sup" CSV with one row per sample.
std::string series_csv(const SupSeries& s);

/// Every series attached to v or its parts, named by a path of labels.
std::vector<std::pair<std::string, std::string>> collect_csv(const Verdict& v, const std::string& prefix);

/// Safe file stem from an arbitrary label.
std::string file_stem(const std::string& label);

/// Plain-text table of a verdict record or a gallery run record.
std::string render_report(const json& record);

json config_json(const Config& cfg);
/// Overrides fields of base with those present in j; unknown keys and out of
/// range values throw InvalidArgument.
Config config_from_json(const json& j, Config base = {});
void validate_config(const Config& cfg);

}  // namespace gcm
