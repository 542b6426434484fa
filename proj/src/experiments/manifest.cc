/*
 * Copyright 2026 The randepth Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "randepth/manifest.h"

#include <chrono>
#include <ctime>
#include <fstream>

#include "randepth/error.h"

namespace randepth {

nlohmann::json RunManifest::ToJson() const {
  return {{"command", command},     {"flags", flags},
          {"master_seed", master_seed}, {"started_at", started_at},
          {"finished_at", finished_at}, {"version", version},
          {"outputs", outputs},     {"extra", extra}};
}

void RunManifest::Write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << ToJson().dump(2) << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string TimestampNow() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

}  // namespace randepth
