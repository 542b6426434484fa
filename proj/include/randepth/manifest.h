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

#ifndef RANDEPTH_MANIFEST_H_
#define RANDEPTH_MANIFEST_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace randepth {

inline constexpr char kLibraryVersion[] = "1.0.0";

// Everything needed to replay a CLI run; only the timestamps change between
// replays.
struct RunManifest {
  std::string command;
  nlohmann::json flags = nlohmann::json::object();
  std::uint64_t master_seed = 0;
  std::string started_at;
  std::string finished_at;
  std::string version = kLibraryVersion;
  std::vector<std::string> outputs;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json ToJson() const;
  // Throws IoError when the file cannot be written.
  void Write(const std::string& path) const;
};

// UTC, ISO-8601 with seconds.
std::string TimestampNow();

}  // namespace randepth

#endif  // RANDEPTH_MANIFEST_H_
