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

#include <string>
#include <vector>

#include "doctest.h"

#include "greyvc/basis.hpp"
#include "greyvc/errors.hpp"

using namespace greyvc;

namespace {

BoolMatrix mat(std::vector<std::string> rows) { return BoolMatrix::parse_rows(rows); }

BasisPair ex21() { return make_pair(2, mat({"011", "011", "011"}), mat({"011", "101", "110"})); }

}  // namespace

TEST_CASE("rationals") {
  CHECK(to_string(Rational(2, 6)) == "1/3");
  CHECK(to_string(Rational(1)) == "1");
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("0") == Rational(0));
  CHECK_THROWS_AS(parse_rational("1/0"), FormatError);
  CHECK_THROWS_AS(parse_rational("x"), FormatError);
}

TEST_CASE("subsets") {
  const auto s = k_subsets(3, 2);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == Subset{0, 1});
  CHECK(s[1] == Subset{0, 2});
  CHECK(s[2] == Subset{1, 2});
  CHECK(binomial(5, 2) == 10);
  CHECK(k_subsets(4, 3).size() == 4);
}

TEST_CASE("pair parameters") {
  const auto p = ex21();
  CHECK(p.m == 3);
  CHECK(p.h == 1);
  CHECK(p.l == 0);
  CHECK(p.alpha == Rational(1, 3));
  CHECK(is_perfect_black(p));
  CHECK(validate_basis(p).valid());
}

TEST_CASE("even/odd (k,k) pair") {
  const auto p = naor_shamir_kk(2);
  CHECK(p.b0.str() == "10;10");
  CHECK(p.b1.str() == "10;01");
  CHECK(p.alpha == Rational(1, 2));
  const auto p3 = naor_shamir_kk(3);
  CHECK(p3.m == 4);
  CHECK(p3.alpha == Rational(1, 4));
  CHECK(validate_basis(p3).valid());
}

TEST_CASE("validation rejects weak pairs") {
  const auto same = make_pair(2, mat({"011", "101", "110"}), mat({"011", "101", "110"}));
  const auto v = validate_basis(same);
  CHECK_FALSE(v.contrast_ok);
  CHECK_FALSE(v.valid());

  // Row 1 alone tells the two matrices apart.
  const auto leaky = make_pair(2, mat({"10", "10"}), mat({"11", "01"}));
  const auto lv = validate_basis(leaky);
  CHECK_FALSE(lv.security_ok);
  CHECK_FALSE(lv.problems.empty());

  CHECK_THROWS(make_pair(2, mat({"01", "01"}), mat({"011", "101"})));
}

TEST_CASE("validation falls back to column multisets above the cap") {
  ValidationOptions opts;
  opts.enumeration_cap = 2;
  const auto v = validate_basis(ex21(), opts);
  CHECK(v.security_mode == SecurityCheck::ColumnMultiset);
  CHECK(v.valid());
  opts.allow_fallback = false;
  const auto skipped = validate_basis(ex21(), opts);
  CHECK(skipped.security_mode == SecurityCheck::Skipped);
  CHECK_FALSE(skipped.valid());
}

TEST_CASE("grey family layout") {
  const auto fam = build_grey_family(ex21(), 3);
  CHECK(fam.m_g == 6);
  REQUIRE(fam.levels.size() == 3);
  CHECK(fam.levels[0].str() == "011011;011011;011011");
  CHECK(fam.levels[1].str() == "011011;011101;011110");
  CHECK(fam.levels[2].str() == "011011;101101;110110");
  CHECK(fam.layout == BlockLayout::uniform(2, 3));
  CHECK_FALSE(fam.block_is_b1(1, 0));
  CHECK(fam.block_is_b1(1, 1));
  REQUIRE(fam.alphas.size() == 2);
  CHECK(fam.alphas[0] == Rational(1, 6));
  CHECK(fam.alphas[1] == Rational(1, 6));
}

TEST_CASE("contrast report") {
  const auto rep = check_grey_family(build_grey_family(ex21(), 4));
  CHECK(rep.satisfied());
  CHECK(rep.min_alpha == Rational(1, 9));
  CHECK(rep.bound_literal == Rational(1, 27));
  CHECK(rep.bound_corrected == Rational(1, 9));
  CHECK(min_bits_for_levels(4) == 3);

  // Two equal levels are not separated.
  const auto m = mat({"01", "10"});
  const auto flat = check_levels({m, m}, 2);
  CHECK_FALSE(flat.satisfied());
  CHECK(flat.adjacent[0].alpha == Rational(0));
}

TEST_CASE("matrix and pair text") {
  const auto m = parse_matrix("2 3\n011\n101\n");
  CHECK(m.str() == "011;101");
  CHECK(parse_matrix(format_matrix(m)) == m);
  CHECK_THROWS_AS(parse_matrix("2 3\n011\n"), FormatError);
  CHECK_THROWS_AS(parse_matrix("2 3\n011\n10\n"), FormatError);

  const auto p = parse_pair(format_pair(ex21()), 2);
  CHECK(p.b0 == ex21().b0);
  CHECK(p.b1 == ex21().b1);
  CHECK(p.h == 1);
}
