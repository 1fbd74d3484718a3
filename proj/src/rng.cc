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

#include "dkm/rng.h"

#include <utility>

namespace dkm {

double Rng::Uniform01() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::UniformBelow(std::uint64_t range) {
  if (range <= 1) return 0;
  const std::uint64_t threshold = (0 - range) % range;
  std::uint64_t x = Next();
  while (x < threshold) x = Next();
  return x % range;
}

void Rng::Shuffle(std::span<int> values) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(UniformBelow(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace dkm
