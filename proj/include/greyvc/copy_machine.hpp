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

#ifndef GREYVC_COPY_MACHINE_HPP_
#define GREYVC_COPY_MACHINE_HPP_

#include <cstddef>
#include <span>

#include "greyvc/boolmat.hpp"

namespace greyvc {

struct OpCounts {
  std::size_t ors = 0;
  std::size_t nots = 0;

  OpCounts& operator+=(const OpCounts& o) {
    ors += o.ors;
    nots += o.nots;
    return *this;
  }
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

// Reconstruction primitives with an operation tally. Every reconstruct
// path goes through one of these so reported costs are measured.
class CopyMachine {
 public:
  // Stacks two transparencies: one OR.
  BoolVector stack(const BoolVector& a, const BoolVector& b);
  // Stacks all of them: size()-1 ORs. Requires a non-empty list.
  BoolVector stack(std::span<const BoolVector> sheets);
  // Copies with reversal: one NOT.
  BoolVector reverse(const BoolVector& v);
  // XOR through the OR/NOT decomposition: four NOTs and three ORs.
  BoolVector exclusive(const BoolVector& a, const BoolVector& b);

  const OpCounts& counts() const { return counts_; }
  void reset() { counts_ = {}; }

 private:
  OpCounts counts_;
};

}  // namespace greyvc

#endif  // GREYVC_COPY_MACHINE_HPP_
