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

#include "greyvc/verify.hpp"

#include <algorithm>
#include <limits>

#include "greyvc/copy_machine.hpp"

namespace greyvc {

bool GoldenSuiteResult::passed() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const FixtureOutcome& o) { return o.passed; });
}

GoldenSuiteResult run_golden_suite(const std::filesystem::path& fixture_dir, const std::string& only) {
  GoldenSuiteResult res;
  for (const auto& fx : load_fixture_dir(fixture_dir)) {
    if (!only.empty() && fx.id != only) continue;
    res.outcomes.push_back(replay_fixture(fx, fixture_dir));
  }
  return res;
}

GoldenSuiteResult direct_extension_failures(const std::filesystem::path& fixture_dir) {
  GoldenSuiteResult res;
  for (const auto& fx : load_fixture_dir(fixture_dir)) {
    if (!fx.failures.empty()) res.outcomes.push_back(replay_fixture(fx, fixture_dir));
  }
  return res;
}

bool for_each_draw(const Scheme& s, std::size_t cap, const std::function<void(const Draw&)>& fn) {
  if (s.draw_count_per_level() > cap) return false;
  Draw d = s.identity_draw();
  if (s.spec().method == PermutationMethod::Locked) {
    Permutation p = d.front();
    do {
      d.assign(d.size(), p);
      fn(d);
    } while (std::next_permutation(p.begin(), p.end()));
    return true;
  }
  // Odometer over the per-block permutations.
  while (true) {
    fn(d);
    std::size_t b = 0;
    while (b < d.size() && !std::next_permutation(d[b].begin(), d[b].end())) ++b;
    if (b == d.size()) break;
  }
  return true;
}

std::string to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::Pass: return "pass";
    case OracleStatus::Fail: return "fail";
    case OracleStatus::Skipped: return "skipped";
  }
  return "?";
}

SecurityReport security_oracle(const Scheme& s, std::size_t t, std::size_t draw_cap) {
  SecurityReport rep;
  rep.coalition_size = t;
  const std::size_t n = s.spec().n;
  if (t == 0 || t >= s.spec().k) {
    rep.details.push_back("coalition size must be in [1, k-1]");
    return rep;
  }
  const auto coalitions = k_subsets(n, t);
  rep.coalitions = coalitions.size();
  // seen[coalition][level][observation] = count
  std::vector<std::vector<std::map<std::string, std::size_t>>> seen(
      coalitions.size(), std::vector<std::map<std::string, std::size_t>>(s.spec().g));
  for (std::size_t q = 0; q < s.spec().g; ++q) {
    std::size_t draws = 0;
    const bool ok = for_each_draw(s, draw_cap, [&](const Draw& d) {
      ++draws;
      const PixelShares sh = s.distribute(q, d);
      for (std::size_t c = 0; c < coalitions.size(); ++c) {
        std::string obs;
        for (std::size_t p : coalitions[c]) {
          for (const auto& r : sh.blocks[p]) obs += r.str() + ",";
          if (!sh.aux.empty()) obs += "a" + sh.aux[p].str();
          obs += "|";
        }
        ++seen[c][q][obs];
      }
    });
    if (!ok) {
      rep.status = OracleStatus::Skipped;
      rep.details.push_back("draw count per level exceeds the cap of " + std::to_string(draw_cap));
      return rep;
    }
    rep.draws_per_level = draws;
  }
  rep.status = OracleStatus::Pass;
  for (std::size_t c = 0; c < coalitions.size(); ++c) {
    for (std::size_t q = 1; q < s.spec().g; ++q) {
      if (seen[c][q] != seen[c][0]) {
        rep.status = OracleStatus::Fail;
        rep.details.push_back("coalition {" + coalition_label(coalitions[c]) + "} tells level 0 from level " +
                              std::to_string(q));
      }
    }
  }
  return rep;
}

Method1Report method1_failure_oracle() {
  SchemeSpec spec;
  spec.kind = SchemeKind::A;
  spec.k = 2;
  spec.n = 3;
  spec.g = 3;
  spec.base = default_basis(SchemeKind::A, 2, 3);
  spec.method = PermutationMethod::Full;
  const Scheme s(spec);
  const auto pairs = k_subsets(3, 2);
  Method1Report rep;
  for (std::size_t q = 0; q < spec.g; ++q) {
    long long n00 = 0, mixed = 0, n11 = 0, total = 0;
    for_each_draw(s, kDefaultDrawCap, [&](const Draw& d) {
      const PixelShares sh = s.distribute(q, d);
      for (const auto& p : pairs) {
        const BoolVector u = s.reconstruct(sh, p);
        const std::size_t w = hamming(u);
        ++total;
        (w == 0 ? n00 : w == 1 ? mixed : n11) += 1;
      }
    });
    Method1Row row;
    row.level = q;
    row.samples = static_cast<std::size_t>(total);
    row.p00 = Rational(n00, total);
    row.p_mixed = Rational(mixed, total);
    row.p11 = Rational(n11, total);
    rep.rows.push_back(row);
  }
  const auto& r = rep.rows;
  rep.matches_expected = r[0].p00 == Rational(3, 5) && r[0].p_mixed == Rational(2, 5) && r[1].p_mixed == Rational(1) &&
                         r[2].p11 == Rational(1);
  return rep;
}

WorstCaseContrast measure_worst_case_contrast(const Scheme& s, std::size_t cap) {
  WorstCaseContrast out;
  const std::size_t g = s.spec().g;
  const auto coalitions = k_subsets(s.spec().n, s.spec().k);
  // lo[c][q] = max weight, hi[c][q] = min weight over draws.
  std::vector<std::vector<std::size_t>> lo(coalitions.size(), std::vector<std::size_t>(g, 0));
  std::vector<std::vector<std::size_t>> hi(coalitions.size(),
                                           std::vector<std::size_t>(g, std::numeric_limits<std::size_t>::max()));
  auto visit = [&](std::size_t q, const Draw& d) {
    const PixelShares sh = s.distribute(q, d);
    for (std::size_t c = 0; c < coalitions.size(); ++c) {
      const std::size_t w = hamming(s.reconstruct(sh, coalitions[c]));
      lo[c][q] = std::max(lo[c][q], w);
      hi[c][q] = std::min(hi[c][q], w);
    }
  };
  out.exhaustive = s.draw_count_per_level() <= cap;
  for (std::size_t q = 0; q < g; ++q) {
    std::size_t draws = 0;
    if (out.exhaustive) {
      for_each_draw(s, cap, [&](const Draw& d) {
        ++draws;
        visit(q, d);
      });
    } else {
      draws = 1;
      visit(q, s.identity_draw());
    }
    out.draws_per_level = draws;
  }
  const auto width = static_cast<long long>(s.contrast_width());
  out.alphas.assign(g - 1, Rational(std::numeric_limits<long long>::max()));
  out.min_alpha = Rational(std::numeric_limits<long long>::max());
  for (std::size_t c = 0; c < coalitions.size(); ++c) {
    auto& v = out.per_coalition[coalitions[c]];
    for (std::size_t q = 0; q + 1 < g; ++q) {
      const Rational a(static_cast<long long>(hi[c][q + 1]) - static_cast<long long>(lo[c][q]), width);
      v.push_back(a);
      out.alphas[q] = std::min(out.alphas[q], a);
      out.min_alpha = std::min(out.min_alpha, a);
    }
  }
  return out;
}

}  // namespace greyvc
