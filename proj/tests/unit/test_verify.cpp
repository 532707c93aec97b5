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

#include <set>

#include "doctest.h"

#include "greyvc/verify.hpp"

using namespace greyvc;

namespace {

SchemeSpec spec_for(SchemeKind kind, std::size_t g, PermutationMethod method = PermutationMethod::WithinBlock) {
  SchemeSpec s;
  s.kind = kind;
  s.k = 2;
  s.n = 3;
  s.g = g;
  s.method = method;
  s.base = default_basis(kind, 2, 3);
  return s;
}

}  // namespace

TEST_CASE("draw enumeration visits each draw once") {
  for (auto method : {PermutationMethod::WithinBlock, PermutationMethod::Locked, PermutationMethod::Full}) {
    const Scheme s(spec_for(SchemeKind::A, 3, method));
    std::set<Draw> seen;
    std::size_t calls = 0;
    CHECK(for_each_draw(s, kDefaultDrawCap, [&](const Draw& d) {
      ++calls;
      seen.insert(d);
    }));
    CHECK(calls == s.draw_count_per_level());
    CHECK(seen.size() == calls);
  }
  const Scheme s(spec_for(SchemeKind::A, 3));
  std::size_t calls = 0;
  CHECK_FALSE(for_each_draw(s, 10, [&](const Draw&) { ++calls; }));
  CHECK(calls == 0);
}

TEST_CASE("security oracle") {
  for (auto kind : {SchemeKind::Baseline, SchemeKind::A, SchemeKind::B, SchemeKind::C}) {
    const auto rep = security_oracle(Scheme(spec_for(kind, 3)), 1);
    CHECK_MESSAGE(rep.status == OracleStatus::Pass, to_string(kind));
    CHECK(rep.coalitions == 3);
  }
  const auto locked = security_oracle(Scheme(spec_for(SchemeKind::A, 3, PermutationMethod::Locked)), 1);
  CHECK(locked.status == OracleStatus::Fail);
  CHECK_FALSE(locked.details.empty());
  CHECK(security_oracle(Scheme(spec_for(SchemeKind::A, 3)), 1, 5).status == OracleStatus::Skipped);
  CHECK(security_oracle(Scheme(spec_for(SchemeKind::A, 3)), 2).status == OracleStatus::Skipped);
  CHECK(to_string(OracleStatus::Fail) == "fail");
}

TEST_CASE("method one") {
  const auto rep = method1_failure_oracle();
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].samples == 2160);
  CHECK(rep.rows[0].p00 == Rational(3, 5));
  CHECK(rep.matches_expected);
}

TEST_CASE("worst-case contrast") {
  const auto wc = measure_worst_case_contrast(Scheme(spec_for(SchemeKind::C, 3)));
  CHECK(wc.exhaustive);
  CHECK(wc.min_alpha == Rational(1, 2));
  CHECK(wc.per_coalition.size() == 3);
  const auto capped = measure_worst_case_contrast(Scheme(spec_for(SchemeKind::A, 4)), 1);
  CHECK_FALSE(capped.exhaustive);
  CHECK(capped.draws_per_level == 1);
}

TEST_CASE("golden suite") {
  const auto all = run_golden_suite(GREYVC_FIXTURE_DIR);
  CHECK(all.passed());
  const auto one = run_golden_suite(GREYVC_FIXTURE_DIR, "C-5");
  REQUIRE(one.outcomes.size() == 1);
  CHECK(one.outcomes[0].id == "C-5");
  CHECK(direct_extension_failures(GREYVC_FIXTURE_DIR).outcomes.size() == 3);
}
