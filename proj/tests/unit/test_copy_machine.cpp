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

#include <vector>

#include "doctest.h"

#include "greyvc/copy_machine.hpp"

using namespace greyvc;

TEST_CASE("each primitive is tallied") {
  CopyMachine cm;
  const auto a = BoolVector::parse("0011");
  const auto b = BoolVector::parse("0101");
  CHECK(cm.stack(a, b).str() == "0111");
  CHECK(cm.counts() == OpCounts{1, 0});
  CHECK(cm.reverse(a).str() == "1100");
  CHECK(cm.counts() == OpCounts{1, 1});
  CHECK(cm.exclusive(a, b).str() == "0110");
  CHECK(cm.counts() == OpCounts{4, 5});
  const std::vector<BoolVector> sheets{a, b, BoolVector::parse("1000")};
  CHECK(cm.stack(sheets).str() == "1111");
  CHECK(cm.counts() == OpCounts{6, 5});
  cm.reset();
  CHECK(cm.counts() == OpCounts{});
}

TEST_CASE("stacking nothing is an error") {
  CopyMachine cm;
  CHECK_THROWS(cm.stack(std::vector<BoolVector>{}));
}
