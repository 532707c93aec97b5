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

// Per-pixel codecs.
//
//   Baseline  stacking only; one share per participant.
//   A         perfect-black base; m runs of (g-1)-bit shares; AND of the
//             per-run stacks (built from OR and NOT) leaves q ones.
//   B         base with (m-h), (m-l) of opposite parity; m runs, each a
//             blockwise rotation of the previous; XOR of the per-run
//             stacks, complemented when (m-h) is odd, leaves q*m ones.
//   C         (k,k) even/odd base spread over all k-subsets; one share
//             plus one public auxiliary share per participant.
//
// Participants and runs are 0-based in this API.

#ifndef GREYVC_SCHEMES_HPP_
#define GREYVC_SCHEMES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "greyvc/basis.hpp"
#include "greyvc/boolmat.hpp"
#include "greyvc/copy_machine.hpp"
#include "greyvc/rng.hpp"

namespace greyvc {

enum class SchemeKind { Baseline, A, B, C };

// Full: one permutation over every column. Locked: the same permutation
// inside every block. WithinBlock: an independent permutation per block.
enum class PermutationMethod { Full, Locked, WithinBlock };

std::string to_string(SchemeKind kind);
SchemeKind parse_scheme_kind(std::string_view text);
std::string to_string(PermutationMethod method);

struct SchemeSpec {
  SchemeKind kind = SchemeKind::A;
  std::size_t k = 2;
  std::size_t n = 3;
  std::size_t g = 3;
  BasisPair base;
  std::uint64_t seed = 0;
  PermutationMethod method = PermutationMethod::WithinBlock;
  // Scheme C block order; empty means lexicographic.
  std::vector<Subset> subset_order;
};

// The basis used when none is supplied: the (k,k) even/odd pair when
// k == n, and for k == 2 a small (2,n) pair suited to the scheme.
// Other (k,n) need an explicit basis file.
BasisPair default_basis(SchemeKind kind, std::size_t k, std::size_t n);

// One permutation per block of Scheme::permutation_layout().
using Draw = std::vector<Permutation>;

struct PixelShares {
  std::size_t level = 0;
  std::size_t runs = 0;
  // blocks[participant][run]
  std::vector<std::vector<BoolVector>> blocks;
  // Scheme C only: aux[participant].
  std::vector<BoolVector> aux;
};

struct AuxMatrices {
  std::vector<BoolMatrix> L;  // per level
  BoolMatrix GA;
  std::vector<Subset> subsets;
  // v * (g-1) blocks of width m, in column order.
  BlockLayout layout;
  std::size_t m_g = 0;  // width of one subset block
};

// Builds L^0..L^{g-1} and GA. `order` fixes the block order; it must list
// every k-subset of [0, n) exactly once.
AuxMatrices schemeC_build_matrices(const BasisPair& base, std::size_t g, std::size_t n,
                                   std::vector<Subset> order = {});

// Reconstruction cores. `shares[i][r]` is the run-r share of the i-th
// contributing participant.
BoolVector baseline_reconstruct(std::span<const BoolVector> shares, CopyMachine& cm);
BoolVector schemeA_reconstruct(const std::vector<std::vector<BoolVector>>& shares, std::size_t m,
                               CopyMachine& cm);
BoolVector schemeB_reconstruct(const std::vector<std::vector<BoolVector>>& shares, std::size_t m,
                               bool complement, CopyMachine& cm);
BoolVector schemeC_reconstruct(std::span<const BoolVector> shares, std::span<const BoolVector> aux,
                               CopyMachine& cm);

// Checks the precondition for `kind`; returns an empty string when it
// holds, otherwise a message naming the violated condition.
std::string scheme_precondition_failure(SchemeKind kind, const BasisPair& base);

class Scheme {
 public:
  // Validates parameters and preconditions; throws ParameterError or
  // PreconditionError.
  explicit Scheme(SchemeSpec spec);

  const SchemeSpec& spec() const { return spec_; }
  const GreyFamily& family() const { return family_; }
  const AuxMatrices* aux_matrices() const { return aux_ ? &*aux_ : nullptr; }
  std::size_t m() const { return spec_.base.m; }

  // Share transparencies per participant per pixel, not counting aux.
  std::size_t runs() const;
  // Bits per share per secret pixel.
  std::size_t block_length() const;
  // Transparencies held by each participant, aux included.
  std::size_t shares_held() const;
  // Bits per secret pixel in the reversing reconstruction.
  std::size_t reconstructed_length() const;
  // Weight added per grey level in the reversing reconstruction.
  std::size_t level_unit() const;
  // Bits over which adjacent-level contrast is measured: the whole
  // reconstruction, except for C where only the subset's own block counts.
  std::size_t contrast_width() const;
  bool complements() const { return complement_; }

  // G^q for baseline/A/B, L^q for C.
  const BoolMatrix& level_matrix(std::size_t level) const;
  const BlockLayout& permutation_layout() const { return perm_layout_; }
  std::size_t draw_count_per_level() const;  // number of distinct draws, saturating

  Draw identity_draw() const;
  Draw random_draw(Rng& rng) const;
  // The level matrix with the draw applied.
  BoolMatrix permuted_matrix(std::size_t level, const Draw& draw) const;

  PixelShares distribute(std::size_t level, const Draw& draw) const;
  PixelShares distribute(std::size_t level, Rng& rng) const;

  // Uses the first k listed participants.
  BoolVector reconstruct(const PixelShares& shares, std::span<const std::size_t> participants,
                         CopyMachine& cm) const;
  BoolVector reconstruct(const PixelShares& shares, std::span<const std::size_t> participants) const;
  // Grey level of a reconstruct() result. Baseline blocks are decoded
  // against stack_only_weights(participants).
  std::size_t decode_level(const BoolVector& recovered, std::span<const std::size_t> participants) const;

  // Plain stacking: every listed participant's share runs laid side by
  // side, then OR-ed together.
  BoolVector stack_only(const PixelShares& shares, std::span<const std::size_t> participants,
                        CopyMachine& cm) const;
  // Expected stack_only weight at each level for these participants.
  std::vector<std::size_t> stack_only_weights(std::span<const std::size_t> participants) const;
  // Level whose stack_only weight is closest to `weight`.
  static std::size_t nearest_level(const std::vector<std::size_t>& weights, std::size_t weight);

 private:
  void check_participants(std::span<const std::size_t> participants) const;

  SchemeSpec spec_;
  GreyFamily family_;
  std::optional<AuxMatrices> aux_;
  BlockLayout perm_layout_;
  bool complement_ = false;
};

}  // namespace greyvc

#endif  // GREYVC_SCHEMES_HPP_
