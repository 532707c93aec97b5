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

#include "greyvc/copy_machine.hpp"

#include "greyvc/errors.hpp"

namespace greyvc {

BoolVector CopyMachine::stack(const BoolVector& a, const BoolVector& b) {
  ++counts_.ors;
  return or_vec(a, b);
}

BoolVector CopyMachine::stack(std::span<const BoolVector> sheets) {
  if (sheets.empty()) throw ParameterError("stack: nothing to stack");
  BoolVector acc = sheets.front();
  for (std::size_t i = 1; i < sheets.size(); ++i) acc = stack(acc, sheets[i]);
  return acc;
}

BoolVector CopyMachine::reverse(const BoolVector& v) {
  ++counts_.nots;
  return not_vec(v);
}

BoolVector CopyMachine::exclusive(const BoolVector& a, const BoolVector& b) {
  const BoolVector left = reverse(stack(a, reverse(b)));
  const BoolVector right = reverse(stack(reverse(a), b));
  return stack(left, right);
}

}  // namespace greyvc
