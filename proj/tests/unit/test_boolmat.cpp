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
#include <string>
#include <vector>

#include "doctest.h"

#include "greyvc/boolmat.hpp"
#include "greyvc/errors.hpp"
#include "greyvc/rng.hpp"

using namespace greyvc;

namespace {

BoolMatrix mat(std::vector<std::string> rows) { return BoolMatrix::parse_rows(rows); }

}  // namespace

TEST_CASE("vector parse and print") {
  const auto v = BoolVector::parse("01_10");
  CHECK(v.size() == 4);
  CHECK(v.str() == "0110");
  CHECK(hamming(v) == 2);
  CHECK(v.slice(1, 2).str() == "11");
  CHECK_THROWS_AS(BoolVector::parse("012"), FormatError);
  CHECK_THROWS(v.at(4));
}

TEST_CASE("vector algebra") {
  const auto a = BoolVector::parse("0011");
  const auto b = BoolVector::parse("0101");
  CHECK(or_vec(a, b).str() == "0111");
  CHECK(and_vec(a, b).str() == "0001");
  CHECK(not_vec(a).str() == "1100");
  CHECK(xor_vec(a, b).str() == "0110");
  CHECK(xor_vec_decomposed(a, b).str() == "0110");
  CHECK(concat(a, b).str() == "00110101");
  CHECK_THROWS_AS(or_vec(a, BoolVector(3)), ParameterError);
}

TEST_CASE("matrix rows and columns") {
  const auto m = mat({"011", "101", "110"});
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 3);
  CHECK(m.row(1).str() == "101");
  CHECK(m.column(0).str() == "011");
  CHECK(m.str() == "011;101;110");
  const std::vector<std::size_t> r01{0, 1};
  CHECK(or_rows(m, r01).str() == "111");
  CHECK(xor_rows(m, r01).str() == "110");
  CHECK(restrict_rows(m, r01).str() == "011;101");
  CHECK(column_slice(m, 1, 2).str() == "11;01;10");
  CHECK(concat(m, m).cols() == 6);
  const std::vector<std::string> ragged{"01", "011"};
  CHECK_THROWS_AS(BoolMatrix::parse_rows(ragged), ParameterError);
}

TEST_CASE("column multisets") {
  const auto a = mat({"011", "101"});
  const auto b = mat({"110", "011"});
  CHECK(is_column_permutation_of(a, b));
  CHECK_FALSE(is_column_permutation_of(a, mat({"011", "011"})));
}

TEST_CASE("permutations") {
  const Permutation p{2, 0, 1};
  CHECK(is_permutation(p, 3));
  CHECK_FALSE(is_permutation(Permutation{0, 0, 1}, 3));
  CHECK(compose(p, inverse(p)) == identity_permutation(3));
  const auto v = BoolVector::parse("100");
  CHECK(permute(v, p).str() == "010");
  CHECK(permute_columns(mat({"100", "011"}), p).str() == "010;101");
  CHECK_THROWS_AS(permute(v, Permutation{0, 1}), ParameterError);
}

TEST_CASE("block layout") {
  const BlockLayout l({2, 3, 1});
  CHECK(l.count() == 3);
  CHECK(l.offset(2) == 5);
  CHECK(l.total() == 6);
  CHECK_FALSE(l.all_equal());
  CHECK(BlockLayout::uniform(3, 2).all_equal());
}

TEST_CASE("within-block permutation keeps columns in their block") {
  const auto m = mat({"100011", "010101"});
  const auto layout = BlockLayout::uniform(2, 3);
  const std::vector<Permutation> perms{{1, 2, 0}, {0, 1, 2}};
  CHECK(permute_within_blocks(m, layout, perms).str() == "001011;100101");

  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto s = wbcp_sample(m, layout, rng);
    CHECK(is_column_permutation_of(column_slice(s, 0, 3), column_slice(m, 0, 3)));
    CHECK(is_column_permutation_of(column_slice(s, 3, 3), column_slice(m, 3, 3)));
    const auto t = wbcp_sample_locked(m, layout, rng);
    CHECK(is_column_permutation_of(column_slice(t, 3, 3), column_slice(m, 3, 3)));
  }
}

TEST_CASE("locked sampling applies one permutation to every block") {
  const auto m = mat({"100100"});
  Rng rng(3);
  std::set<std::string> seen;
  for (int i = 0; i < 60; ++i) {
    const auto s = wbcp_sample_locked(m, BlockLayout::uniform(2, 3), rng);
    CHECK(s.row(0).slice(0, 3) == s.row(0).slice(3, 3));
    seen.insert(s.str());
  }
  CHECK(seen.size() == 3);
}

TEST_CASE("gamma shift rotates each block right") {
  CHECK(gamma_shift(BoolVector::parse("100100"), 3).str() == "010010");
  CHECK(gamma_shift(BoolVector::parse("001"), 3).str() == "100");
  CHECK_THROWS_AS(gamma_shift(BoolVector::parse("10010"), 3), ParameterError);
}

TEST_CASE("rng is deterministic") {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  auto p1 = Rng::for_pixel(1, 2, 3);
  auto p2 = Rng::for_pixel(1, 2, 3);
  auto p3 = Rng::for_pixel(1, 3, 2);
  const auto x = p1.next();
  CHECK(x == p2.next());
  CHECK(x != p3.next());
  Rng r(9);
  for (int i = 0; i < 100; ++i) CHECK(r.below(7) < 7);
  CHECK(is_permutation(random_permutation(10, r), 10));
}
