/*
 * Copyright 2026 The greyvc Authors
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

#ifndef GREYVC_RNG_HPP_
#define GREYVC_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace greyvc {

using Permutation = std::vector<std::size_t>;

// Counted SplitMix64 stream. The output sequence is fully specified here
// (no std::distribution involved) so shares are byte-identical across
// standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent stream for one secret pixel; encode order and thread
  // count never change which stream a pixel sees.
  static Rng for_pixel(std::uint64_t seed, std::uint64_t row, std::uint64_t col);

  std::uint64_t next();

  // Uniform in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x);

// Uniform permutation of [0, n) by Fisher-Yates.
Permutation random_permutation(std::size_t n, Rng& rng);

}  // namespace greyvc

#endif  // GREYVC_RNG_HPP_
