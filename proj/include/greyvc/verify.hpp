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

// Exhaustive oracles over small schemes and the golden fixture suite.

#ifndef GREYVC_VERIFY_HPP_
#define GREYVC_VERIFY_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "greyvc/basis.hpp"
#include "greyvc/fixtures.hpp"
#include "greyvc/schemes.hpp"

namespace greyvc {

inline constexpr std::size_t kDefaultDrawCap = 1'000'000;

struct GoldenSuiteResult {
  std::vector<FixtureOutcome> outcomes;
  bool passed() const;
};

// Replays every fixture whose id matches `only` (all when empty).
GoldenSuiteResult run_golden_suite(const std::filesystem::path& fixture_dir, const std::string& only = "");

// Fixtures that declare a failure (collision or uneven contrast).
GoldenSuiteResult direct_extension_failures(const std::filesystem::path& fixture_dir);

// Calls `fn` once for every distinct draw of the scheme's permutation
// method. Returns false without calling `fn` if there are more than `cap`.
bool for_each_draw(const Scheme& s, std::size_t cap, const std::function<void(const Draw&)>& fn);

enum class OracleStatus { Pass, Fail, Skipped };
std::string to_string(OracleStatus s);

struct SecurityReport {
  OracleStatus status = OracleStatus::Skipped;
  std::size_t coalition_size = 0;
  std::size_t draws_per_level = 0;
  std::size_t coalitions = 0;
  std::vector<std::string> details;  // distinguishing coalitions, or why skipped
};

// For every coalition of `t` participants, compares the multiset of its
// joint observations (all runs plus aux) over all draws, level by level.
SecurityReport security_oracle(const Scheme& s, std::size_t t, std::size_t draw_cap = kDefaultDrawCap);

struct Method1Row {
  std::size_t level = 0;
  std::size_t samples = 0;  // draws x coalitions
  Rational p00;
  Rational p_mixed;  // 01 or 10
  Rational p11;
};

struct Method1Report {
  std::vector<Method1Row> rows;
  bool matches_expected = false;  // level 0: 3/5, 2/5, 0; level 1: mixed; level 2: 11
};

// Scheme A at (2,3), g=3 on the default basis with one permutation over
// all six columns: every 6! draw and every pair, per level.
Method1Report method1_failure_oracle();

struct WorstCaseContrast {
  bool exhaustive = false;
  std::size_t draws_per_level = 0;
  // Worst case over draws, per k-coalition and adjacent level pair.
  std::map<Coalition, std::vector<Rational>> per_coalition;
  std::vector<Rational> alphas;  // minimum over coalitions
  Rational min_alpha;
};

// Reversing reconstruction of every k-coalition over every draw (or the
// identity draw only when the draw count exceeds `cap`).
WorstCaseContrast measure_worst_case_contrast(const Scheme& s, std::size_t cap = kDefaultDrawCap);

}  // namespace greyvc

#endif  // GREYVC_VERIFY_HPP_
