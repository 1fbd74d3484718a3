/*
 * Copyright 2026 The DKM Authors.
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

#ifndef DKM_RNG_H_
#define DKM_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace dkm {

// Portable random source used for graph generation and splits.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are not portable across library
// implementations, so the derived draws are defined here:
//   Uniform01()     = (next() >> 11) * 2^-53, in [0, 1)
//   UniformBelow(r) = rejection sampling: draw x until x >= (2^64 mod r),
//                     return x mod r
//   Shuffle         = Fisher-Yates from the last position down to 1, swapping
//                     position i with UniformBelow(i + 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  double Uniform01();
  std::uint64_t UniformBelow(std::uint64_t range);
  void Shuffle(std::span<int> values);

 private:
  std::mt19937_64 engine_;
};

}  // namespace dkm

#endif  // DKM_RNG_H_
