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

#include "doctest.h"
#include "gallery.hpp"

using namespace gcm;

TEST_CASE("every gallery entry reproduces its expected verdicts") {
  Config cfg;
  auto run = gallery_run(cfg);
  for (std::size_t i = 0; i < run.results.size(); ++i)
    for (const auto& x : run.results[i]) {
      INFO(gallery()[i].name << ": " << x.label << " expected " << to_string(x.expected) << " got "
                             << to_string(x.actual.status));
      CHECK(x.match());
    }
  for (const auto& e : run.record["entries"]) CHECK_MESSAGE(!e.contains("error"), e["name"].get<std::string>() << ": " << e.value("error", ""));
  CHECK(run.all_match);
}
