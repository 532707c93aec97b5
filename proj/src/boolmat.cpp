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

#include "greyvc/boolmat.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "greyvc/errors.hpp"

namespace greyvc {

namespace {

void require_same_length(const BoolVector& a, const BoolVector& b, const char* op) {
  if (a.size() != b.size()) {
    throw ParameterError(std::string(op) + ": length mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
}

void require_rows(const BoolMatrix& m, std::span<const std::size_t> rows, const char* op) {
  std::vector<bool> seen(m.rows(), false);
  for (std::size_t r : rows) {
    if (r >= m.rows()) {
      throw ParameterError(std::string(op) + ": row index " + std::to_string(r) +
                           " out of range for " + std::to_string(m.rows()) + " rows");
    }
    if (seen[r]) throw ParameterError(std::string(op) + ": duplicate row index " + std::to_string(r));
    seen[r] = true;
  }
}

}  // namespace

// -- BoolVector --------------------------------------------------------------

BoolVector::BoolVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw ParameterError("BoolVector: entries must be 0 or 1");
  }
}

BoolVector BoolVector::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c != '_' && c != ' ') {
      throw FormatError("bit string contains '" + std::string(1, c) + "': " + std::string(text));
    }
  }
  return BoolVector(std::move(bits));
}

bool BoolVector::at(std::size_t i) const {
  if (i >= bits_.size()) throw ParameterError("BoolVector::at: index out of range");
  return bits_[i] != 0;
}

std::string BoolVector::str() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

BoolVector BoolVector::slice(std::size_t offset, std::size_t len) const {
  if (offset > bits_.size() || len > bits_.size() - offset) {
    throw ParameterError("BoolVector::slice: range out of bounds");
  }
  const auto first = bits_.begin() + static_cast<std::ptrdiff_t>(offset);
  return BoolVector(std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(len)));
}

// -- BoolMatrix --------------------------------------------------------------

BoolMatrix BoolMatrix::from_rows(std::span<const BoolVector> rows) {
  if (rows.empty()) return BoolMatrix();
  BoolMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) {
      throw ParameterError("BoolMatrix::from_rows: ragged rows (row " + std::to_string(r) + ")");
    }
    std::copy(rows[r].bits().begin(), rows[r].bits().end(),
              m.bits_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_));
  }
  return m;
}

BoolMatrix BoolMatrix::parse_rows(std::span<const std::string> rows) {
  std::vector<BoolVector> parsed;
  parsed.reserve(rows.size());
  for (const auto& r : rows) parsed.push_back(BoolVector::parse(r));
  return from_rows(parsed);
}

bool BoolMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw ParameterError("BoolMatrix::at: index out of range");
  return (*this)(r, c);
}

BoolVector BoolMatrix::row(std::size_t r) const {
  if (r >= rows_) throw ParameterError("BoolMatrix::row: index out of range");
  const auto first = bits_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
  return BoolVector(std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(cols_)));
}

BoolVector BoolMatrix::column(std::size_t c) const {
  if (c >= cols_) throw ParameterError("BoolMatrix::column: index out of range");
  std::vector<std::uint8_t> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = bits_[r * cols_ + c];
  return BoolVector(std::move(out));
}

std::vector<std::string> BoolMatrix::row_strings() const {
  std::vector<std::string> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r).str());
  return out;
}

std::string BoolMatrix::str() const {
  std::string s;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) s += ';';
    s += row(r).str();
  }
  return s;
}

// -- BlockLayout -------------------------------------------------------------

BlockLayout::BlockLayout(std::vector<std::size_t> widths) : widths_(std::move(widths)) {
  offsets_.reserve(widths_.size());
  for (std::size_t w : widths_) {
    if (w == 0) throw ParameterError("BlockLayout: block widths must be positive");
    offsets_.push_back(total_);
    total_ += w;
  }
}

BlockLayout BlockLayout::uniform(std::size_t count, std::size_t width) {
  return BlockLayout(std::vector<std::size_t>(count, width));
}

bool BlockLayout::all_equal() const {
  return std::adjacent_find(widths_.begin(), widths_.end(), std::not_equal_to<>()) == widths_.end();
}

// -- vector algebra ----------------------------------------------------------

BoolVector or_vec(const BoolVector& a, const BoolVector& b) {
  require_same_length(a, b, "or");
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.bits()[i] | b.bits()[i];
  return BoolVector(std::move(out));
}

BoolVector and_vec(const BoolVector& a, const BoolVector& b) {
  require_same_length(a, b, "and");
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.bits()[i] & b.bits()[i];
  return BoolVector(std::move(out));
}

BoolVector not_vec(const BoolVector& v) {
  std::vector<std::uint8_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v.bits()[i] ^ 1u;
  return BoolVector(std::move(out));
}

BoolVector xor_vec(const BoolVector& a, const BoolVector& b) {
  require_same_length(a, b, "xor");
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.bits()[i] ^ b.bits()[i];
  return BoolVector(std::move(out));
}

BoolVector xor_vec_decomposed(const BoolVector& a, const BoolVector& b) {
  require_same_length(a, b, "xor");
  const BoolVector left = not_vec(or_vec(a, not_vec(b)));
  const BoolVector right = not_vec(or_vec(not_vec(a), b));
  return or_vec(left, right);
}

std::size_t hamming(const BoolVector& v) {
  return static_cast<std::size_t>(std::count(v.bits().begin(), v.bits().end(), std::uint8_t{1}));
}

BoolVector concat(const BoolVector& a, const BoolVector& b) {
  std::vector<std::uint8_t> out(a.bits());
  out.insert(out.end(), b.bits().begin(), b.bits().end());
  return BoolVector(std::move(out));
}

// -- matrix algebra ----------------------------------------------------------

BoolVector or_rows(const BoolMatrix& m, std::span<const std::size_t> rows) {
  require_rows(m, rows, "or_rows");
  std::vector<std::uint8_t> out(m.cols(), 0);
  for (std::size_t r : rows) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] |= m(r, c) ? 1 : 0;
  }
  return BoolVector(std::move(out));
}

BoolVector xor_rows(const BoolMatrix& m, std::span<const std::size_t> rows) {
  require_rows(m, rows, "xor_rows");
  std::vector<std::uint8_t> out(m.cols(), 0);
  for (std::size_t r : rows) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] ^= m(r, c) ? 1 : 0;
  }
  return BoolVector(std::move(out));
}

BoolMatrix restrict_rows(const BoolMatrix& m, std::span<const std::size_t> rows) {
  require_rows(m, rows, "restrict_rows");
  BoolMatrix out(rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < m.cols(); ++c) out.set(i, c, m(rows[i], c));
  }
  return out;
}

BoolMatrix concat(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.cols() == 0 && a.rows() == 0) return b;
  if (b.cols() == 0 && b.rows() == 0) return a;
  if (a.rows() != b.rows()) {
    throw ParameterError("concat: row-count mismatch (" + std::to_string(a.rows()) + " vs " +
                         std::to_string(b.rows()) + ")");
  }
  BoolMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a(r, c));
    for (std::size_t c = 0; c < b.cols(); ++c) out.set(r, a.cols() + c, b(r, c));
  }
  return out;
}

BoolMatrix column_slice(const BoolMatrix& m, std::size_t offset, std::size_t len) {
  if (offset > m.cols() || len > m.cols() - offset) {
    throw ParameterError("column_slice: range out of bounds");
  }
  BoolMatrix out(m.rows(), len);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < len; ++c) out.set(r, c, m(r, offset + c));
  }
  return out;
}

std::vector<std::string> column_multiset(const BoolMatrix& m) {
  std::vector<std::string> cols;
  cols.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c).str());
  std::sort(cols.begin(), cols.end());
  return cols;
}

bool is_column_permutation_of(const BoolMatrix& a, const BoolMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && column_multiset(a) == column_multiset(b);
}

// -- column permutations -----------------------------------------------------

bool is_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

Permutation inverse(std::span<const std::size_t> perm) {
  if (!is_permutation(perm, perm.size())) throw ParameterError("inverse: not a permutation");
  Permutation inv(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) inv[perm[j]] = j;
  return inv;
}

Permutation compose(std::span<const std::size_t> first, std::span<const std::size_t> second) {
  if (first.size() != second.size() || !is_permutation(first, first.size()) ||
      !is_permutation(second, second.size())) {
    throw ParameterError("compose: operands must be permutations of equal size");
  }
  // Applying `first` then `second` picks column first[second[j]].
  Permutation out(first.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = first[second[j]];
  return out;
}

BoolMatrix permute_columns(const BoolMatrix& m, std::span<const std::size_t> perm) {
  if (!is_permutation(perm, m.cols())) {
    throw ParameterError("permute_columns: not a bijection on " + std::to_string(m.cols()) + " columns");
  }
  BoolMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out.set(r, c, m(r, perm[c]));
  }
  return out;
}

BoolVector permute(const BoolVector& v, std::span<const std::size_t> perm) {
  if (!is_permutation(perm, v.size())) throw ParameterError("permute: not a bijection");
  std::vector<std::uint8_t> out(v.size());
  for (std::size_t c = 0; c < v.size(); ++c) out[c] = v.bits()[perm[c]];
  return BoolVector(std::move(out));
}

BoolMatrix permute_within_blocks(const BoolMatrix& m, const BlockLayout& layout,
                                 std::span<const Permutation> perms) {
  if (layout.total() != m.cols()) {
    throw ParameterError("permute_within_blocks: layout covers " + std::to_string(layout.total()) +
                         " columns, matrix has " + std::to_string(m.cols()));
  }
  if (perms.size() != layout.count()) {
    throw ParameterError("permute_within_blocks: need one permutation per block");
  }
  BoolMatrix out(m.rows(), m.cols());
  for (std::size_t b = 0; b < layout.count(); ++b) {
    const std::size_t off = layout.offset(b);
    const std::size_t w = layout.width(b);
    if (!is_permutation(perms[b], w)) {
      throw ParameterError("permute_within_blocks: block " + std::to_string(b) +
                           " permutation is not a bijection on " + std::to_string(w) + " columns");
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < w; ++c) out.set(r, off + c, m(r, off + perms[b][c]));
    }
  }
  return out;
}

BoolMatrix wbcp_sample(const BoolMatrix& m, const BlockLayout& layout, Rng& rng) {
  if (layout.total() != m.cols()) throw ParameterError("wbcp_sample: layout does not match matrix width");
  std::vector<Permutation> perms;
  perms.reserve(layout.count());
  for (std::size_t b = 0; b < layout.count(); ++b) perms.push_back(random_permutation(layout.width(b), rng));
  return permute_within_blocks(m, layout, perms);
}

BoolMatrix wbcp_sample_locked(const BoolMatrix& m, const BlockLayout& layout, Rng& rng) {
  if (layout.total() != m.cols()) {
    throw ParameterError("wbcp_sample_locked: layout does not match matrix width");
  }
  if (!layout.all_equal()) throw ParameterError("wbcp_sample_locked: blocks must have equal widths");
  if (layout.count() == 0) return m;
  const Permutation p = random_permutation(layout.width(0), rng);
  const std::vector<Permutation> perms(layout.count(), p);
  return permute_within_blocks(m, layout, perms);
}

BoolVector gamma_shift(const BoolVector& v, std::size_t block) {
  if (block == 0 || v.size() % block != 0) {
    throw ParameterError("gamma_shift: length " + std::to_string(v.size()) +
                         " is not a multiple of block width " + std::to_string(block));
  }
  std::vector<std::uint8_t> out(v.size());
  for (std::size_t base = 0; base < v.size(); base += block) {
    out[base] = v.bits()[base + block - 1];
    for (std::size_t i = 1; i < block; ++i) out[base + i] = v.bits()[base + i - 1];
  }
  return BoolVector(std::move(out));
}

}  // namespace greyvc
