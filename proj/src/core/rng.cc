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

#include "randepth/rng.h"

#include <limits>

namespace randepth {
namespace {

std::uint64_t HashLabel(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (const unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Combine(std::uint64_t key, std::uint64_t salt) {
  return MixBits(key ^ MixBits(salt + 0x9e3779b97f4a7c15ULL));
}

}  // namespace

std::uint64_t MixBits(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed)
    : key_(MixBits(master_seed)), label_(std::to_string(master_seed)) {}

RngStream RngStream::FromKey(std::uint64_t key, std::string label) {
  return RngStream(key, std::move(label));
}

RngStream RngStream::Child(std::string_view label) const {
  // Odd tag keeps string labels and integer indices in separate key spaces.
  return RngStream(Combine(key_, HashLabel(label) | 1ULL),
                   label_ + "/" + std::string(label));
}

RngStream RngStream::Child(std::uint64_t index) const {
  return RngStream(Combine(key_, index << 1),
                   label_ + "/" + std::to_string(index));
}

std::uint64_t UniformIndex(Engine& engine, std::uint64_t n) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t draw;
  do {
    draw = engine();
  } while (draw >= limit);
  return draw % n;
}

}  // namespace randepth
