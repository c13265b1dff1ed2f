// Copyright 2026 The TAT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TAT_RNG_H_
#define TAT_RNG_H_

#include <cstdint>

namespace tat {

// Counter-based generator built on the SplitMix64 finalizer. A (seed,
// stream) pair fixes a key; the k-th draw (k = 1, 2, ...) is
//   mix64(key + k * 0x9E3779B97F4A7C15)
// with key = mix64(seed ^ mix64(stream + 0x9E3779B97F4A7C15)). The output
// depends only on integer arithmetic, so sequences are identical on every
// platform, and every encode call gets its own stream.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream);

  uint64_t next();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();

  static uint64_t mix64(uint64_t z);

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace tat

#endif  // TAT_RNG_H_
