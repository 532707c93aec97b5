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

// Dense 0/1 vectors and matrices. 0 is a white (transparent) subpixel,
// 1 a black one, so OR is stacking transparencies and NOT is reversing
// one on a copy machine.

#ifndef GREYVC_BOOLMAT_HPP_
#define GREYVC_BOOLMAT_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "greyvc/rng.hpp"

namespace greyvc {

class BoolVector {
 public:
  BoolVector() = default;
  explicit BoolVector(std::size_t len, bool value = false)
      : bits_(len, value ? 1 : 0) {}
  explicit BoolVector(std::vector<std::uint8_t> bits);

  // Parses "0110"; '_' and ' ' are accepted as visual separators.
  static BoolVector parse(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }

  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::string str() const;

  BoolVector slice(std::size_t offset, std::size_t len) const;

  friend bool operator==(const BoolVector&, const BoolVector&) = default;
  friend auto operator<=>(const BoolVector&, const BoolVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

class BoolMatrix {
 public:
  BoolMatrix() = default;
  BoolMatrix(std::size_t rows, std::size_t cols, bool value = false)
      : rows_(rows), cols_(cols), bits_(rows * cols, value ? 1 : 0) {}

  // All rows must have the same length.
  static BoolMatrix from_rows(std::span<const BoolVector> rows);
  static BoolMatrix parse_rows(std::span<const std::string> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool operator()(std::size_t r, std::size_t c) const { return bits_[r * cols_ + c] != 0; }
  bool at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value) { bits_[r * cols_ + c] = value ? 1 : 0; }

  BoolVector row(std::size_t r) const;
  BoolVector column(std::size_t c) const;
  std::vector<std::string> row_strings() const;
  // Rows joined with ';', e.g. "011;101;110".
  std::string str() const;

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Widths of consecutive column blocks ("components").
class BlockLayout {
 public:
  BlockLayout() = default;
  explicit BlockLayout(std::vector<std::size_t> widths);
  static BlockLayout uniform(std::size_t count, std::size_t width);

  std::size_t count() const { return widths_.size(); }
  std::size_t width(std::size_t block) const { return widths_.at(block); }
  std::size_t offset(std::size_t block) const { return offsets_.at(block); }
  std::size_t total() const { return total_; }
  const std::vector<std::size_t>& widths() const { return widths_; }
  bool all_equal() const;

  friend bool operator==(const BlockLayout& a, const BlockLayout& b) { return a.widths_ == b.widths_; }

 private:
  std::vector<std::size_t> widths_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

// -- vector algebra ---------------------------------------------------------

BoolVector or_vec(const BoolVector& a, const BoolVector& b);
BoolVector and_vec(const BoolVector& a, const BoolVector& b);
BoolVector not_vec(const BoolVector& v);
BoolVector xor_vec(const BoolVector& a, const BoolVector& b);
// a XOR b computed only with OR and NOT:
// NOT(a OR NOT b) OR NOT(NOT a OR b).
BoolVector xor_vec_decomposed(const BoolVector& a, const BoolVector& b);
std::size_t hamming(const BoolVector& v);
BoolVector concat(const BoolVector& a, const BoolVector& b);

// -- matrix algebra ---------------------------------------------------------

// Componentwise OR of the selected rows (0-based, distinct).
BoolVector or_rows(const BoolMatrix& m, std::span<const std::size_t> rows);
// XOR of the selected rows.
BoolVector xor_rows(const BoolMatrix& m, std::span<const std::size_t> rows);
BoolMatrix restrict_rows(const BoolMatrix& m, std::span<const std::size_t> rows);
BoolMatrix concat(const BoolMatrix& a, const BoolMatrix& b);
BoolMatrix column_slice(const BoolMatrix& m, std::size_t offset, std::size_t len);

// Columns of `m` as sorted bit strings; equal results mean the matrices
// differ only by a column permutation.
std::vector<std::string> column_multiset(const BoolMatrix& m);
bool is_column_permutation_of(const BoolMatrix& a, const BoolMatrix& b);

// -- column permutations ----------------------------------------------------

bool is_permutation(std::span<const std::size_t> perm, std::size_t n);
Permutation identity_permutation(std::size_t n);
Permutation inverse(std::span<const std::size_t> perm);
Permutation compose(std::span<const std::size_t> first, std::span<const std::size_t> second);

// Column j of the result is column perm[j] of `m`.
BoolMatrix permute_columns(const BoolMatrix& m, std::span<const std::size_t> perm);
BoolVector permute(const BoolVector& v, std::span<const std::size_t> perm);

// One local permutation per block; columns never cross block boundaries.
BoolMatrix permute_within_blocks(const BoolMatrix& m, const BlockLayout& layout,
                                 std::span<const Permutation> perms);

// Independent uniform permutation inside every block.
BoolMatrix wbcp_sample(const BoolMatrix& m, const BlockLayout& layout, Rng& rng);
// A single uniform permutation applied identically inside every block.
// Requires equal block widths.
BoolMatrix wbcp_sample_locked(const BoolMatrix& m, const BlockLayout& layout, Rng& rng);

// Rotates each consecutive `block`-wide chunk right by one position.
BoolVector gamma_shift(const BoolVector& v, std::size_t block);

}  // namespace greyvc

#endif  // GREYVC_BOOLMAT_HPP_
