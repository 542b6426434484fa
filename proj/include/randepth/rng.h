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

#ifndef RANDEPTH_RNG_H_
#define RANDEPTH_RNG_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace randepth {

using Engine = std::mt19937_64;

// A named, reproducible source of randomness. A stream is identified by a
// master seed plus a label path ("tree/17/sample"); its 64-bit key is a hash
// of both, so children derived in any order or on any thread always see the
// same draws. Streams are values: deriving a child never mutates the parent.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed);

  // Rebuilds a stream from a recorded key (see key()).
  static RngStream FromKey(std::uint64_t key, std::string label = "<key>");

  RngStream Child(std::string_view label) const;
  RngStream Child(std::uint64_t index) const;
  RngStream Child(std::string_view label, std::uint64_t index) const {
    return Child(label).Child(index);
  }

  // A fresh engine positioned at the start of this stream's sequence.
  Engine engine() const { return Engine(key_); }

  std::uint64_t key() const { return key_; }
  const std::string& label() const { return label_; }

 private:
  RngStream(std::uint64_t key, std::string label)
      : key_(key), label_(std::move(label)) {}

  std::uint64_t key_;
  std::string label_;
};

// splitmix64 finalizer.
std::uint64_t MixBits(std::uint64_t x);

// Uniform draw in [0, 1) from the top 53 bits of one engine output.
inline double Uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n), n >= 1, by rejection (no modulo bias).
std::uint64_t UniformIndex(Engine& engine, std::uint64_t n);

}  // namespace randepth

#endif  // RANDEPTH_RNG_H_
