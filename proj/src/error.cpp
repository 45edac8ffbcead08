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

#include "gcm/error.hpp"

namespace gcm {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Domain: return "Domain";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::MissingFiberMetric: return "MissingFiberMetric";
    case ErrorCode::MarginTooSmall: return "MarginTooSmall";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::ChartEscape: return "ChartEscape";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::SupportEscape: return "SupportEscape";
    case ErrorCode::NoSharedChart: return "NoSharedChart";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::SingleChartMissing: return "SingleChartMissing";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::SpecError: return "SpecError";
  }
  return "Unknown";
}

}  // namespace gcm
