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

// Binary basis pairs and the greyscale families built from them.

#ifndef GREYVC_BASIS_HPP_
#define GREYVC_BASIS_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "greyvc/boolmat.hpp"

namespace greyvc {

using Rational = boost::rational<long long>;

// "1/3", "0", "1".
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

using Subset = std::vector<std::size_t>;

// All k-element subsets of [0, n) in lexicographic order.
std::vector<Subset> k_subsets(std::size_t n, std::size_t k);
std::size_t binomial(std::size_t n, std::size_t k);

struct BasisPair {
  std::size_t k = 0;
  std::size_t n = 0;
  BoolMatrix b0;
  BoolMatrix b1;
  std::size_t m = 0;
  // Tight bounds over all k-subsets: h = m - max H(OR(B0|S)),
  // l = m - min H(OR(B1|S)). h <= l means the pair has no contrast.
  std::size_t h = 0;
  std::size_t l = 0;
  Rational alpha;
};

// Derives m, h, l and alpha. Requires 1 <= k <= n and equal n x m shapes.
BasisPair make_pair(std::size_t k, BoolMatrix b0, BoolMatrix b1);

// The (k,k) pair whose B0 columns are the even-weight k-vectors and B1
// columns the odd-weight ones. Columns are listed in descending order
// reading the first row as the most significant bit, so k=2 gives
// B0=[10;10], B1=[10;01].
BasisPair naor_shamir_kk(std::size_t k);

enum class SecurityCheck { Exhaustive, ColumnMultiset, Skipped };

struct BasisValidation {
  bool shape_ok = true;
  bool contrast_ok = false;  // h > l
  bool security_ok = false;
  SecurityCheck security_mode = SecurityCheck::Skipped;
  std::vector<std::string> problems;

  bool valid() const {
    return shape_ok && contrast_ok && security_ok && security_mode != SecurityCheck::Skipped;
  }
};

struct ValidationOptions {
  // Column-permutation enumeration is used while m! stays at or below this.
  std::size_t enumeration_cap = 40320;
  // Above the cap, compare restricted column multisets instead. This is
  // an exact test for the same condition, just not by enumeration.
  bool allow_fallback = true;
};

BasisValidation validate_basis(const BasisPair& pair, const ValidationOptions& opts = {});

bool is_perfect_black(const BasisPair& pair);

struct GreyFamily {
  std::size_t g = 0;
  std::size_t k = 0;
  std::size_t n = 0;
  BasisPair base;
  // levels[q] = (g-q-1) copies of B0 followed by q copies of B1.
  std::vector<BoolMatrix> levels;
  BlockLayout layout;
  std::size_t m_g = 0;
  // alphas[q] is the contrast between levels q+1 and q.
  std::vector<Rational> alphas;

  bool block_is_b1(std::size_t level, std::size_t block) const { return block + level + 1 >= g; }
};

GreyFamily build_grey_family(const BasisPair& pair, std::size_t g);

struct LevelContrast {
  std::size_t level = 0;           // compares level+1 against level
  std::size_t max_weight_low = 0;  // max over k-subsets of H(OR(G^q|S))
  std::size_t d = 0;               // min over k-subsets of H(OR(G^{q+1}|S))
  Rational alpha;
  bool separated = false;          // d > max_weight_low
};

struct ContrastReport {
  std::vector<LevelContrast> adjacent;
  // For every subset of fewer than k rows, H(OR(G^q|S)) does not depend on q.
  bool small_coalitions_equal = false;
  // For every subset of fewer than k rows, each block's restricted column
  // multiset does not depend on q.
  bool small_coalitions_blockwise_equal = false;
  Rational min_alpha;
  // Upper bound on min alpha read as 1/((g-1) m_g) and as 1/m_g.
  Rational bound_literal;
  Rational bound_corrected;
  std::vector<std::string> problems;

  bool satisfied() const;
};

// Works on any ordered list of equally shaped level matrices.
// An empty layout treats the whole width as one block.
ContrastReport check_levels(const std::vector<BoolMatrix>& levels, std::size_t k,
                            const BlockLayout& layout = {});
ContrastReport check_grey_family(const GreyFamily& fam);

std::size_t min_bits_for_levels(std::size_t g);

// Matrix text: "n m" on the first line, then n lines of m bits.
BoolMatrix parse_matrix(std::string_view text);
std::string format_matrix(const BoolMatrix& m);
// Pair text: B0 block, a blank line, B1 block.
BasisPair parse_pair(std::string_view text, std::size_t k);
std::string format_pair(const BasisPair& pair);
BasisPair load_pair(const std::filesystem::path& path, std::size_t k);

}  // namespace greyvc

#endif  // GREYVC_BASIS_HPP_
