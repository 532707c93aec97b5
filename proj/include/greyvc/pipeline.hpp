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

// Whole-image encode/decode on top of the per-pixel schemes.
//
// Each secret pixel becomes a horizontal run of block_length() subpixels
// in every share, so a W x H secret yields (W * block_length) x H shares.

#ifndef GREYVC_PIPELINE_HPP_
#define GREYVC_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "greyvc/basis.hpp"
#include "greyvc/netpbm.hpp"
#include "greyvc/schemes.hpp"

namespace greyvc {

struct GreyImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t g = 0;
  std::vector<std::uint16_t> levels;  // row-major, each < g

  GreyImage() = default;
  GreyImage(std::size_t w, std::size_t h, std::size_t levels_count)
      : width(w), height(h), g(levels_count), levels(w * h, 0) {}
  std::uint16_t& at(std::size_t x, std::size_t y) { return levels[y * width + x]; }
  std::uint16_t at(std::size_t x, std::size_t y) const { return levels[y * width + x]; }
  friend bool operator==(const GreyImage&, const GreyImage&) = default;
};

// level = floor(v * g / 256), clamped to g-1. Sample 0 is level 0, the
// level reconstructed with the fewest black subpixels. g must be in 2..256.
GreyImage quantize(const Gray8Image& img, std::size_t g);
// Level q renders as floor(q * 255 / (g-1)).
Gray8Image render_levels(const GreyImage& img);

enum class ShareKind { Share, Aux };

struct ShareImage {
  std::size_t participant = 0;  // 0-based
  std::size_t run = 0;          // 0-based; aux shares use 0
  ShareKind kind = ShareKind::Share;
  BitImage image;
};

struct ManifestFile {
  std::size_t participant = 0;  // 1-based
  std::size_t run = 0;          // 1-based; aux is listed as the run after the last share
  ShareKind kind = ShareKind::Share;
  std::string path;
};

struct Manifest {
  SchemeKind scheme = SchemeKind::A;
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t g = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::size_t runs = 0;
  std::size_t block_length = 0;
  std::size_t width = 0;   // secret pixels
  std::size_t height = 0;
  PermutationMethod method = PermutationMethod::WithinBlock;
  std::vector<Subset> subset_order;  // scheme C, 0-based
  std::string parity_rule;           // scheme B
  BoolMatrix b0;
  BoolMatrix b1;
  std::vector<ManifestFile> files;
};

nlohmann::json manifest_to_json(const Manifest& m);
Manifest manifest_from_json(const nlohmann::json& j);
Scheme scheme_from_manifest(const Manifest& m);

struct ShareBundle {
  Manifest manifest;
  std::vector<ShareImage> shares;
};

std::string share_filename(std::size_t participant, std::size_t run, ShareKind kind);

// Pixel (x, y) draws from Rng::for_pixel(seed, y, x), so the result does
// not depend on `threads`.
ShareBundle encode_image(const GreyImage& img, const Scheme& scheme, unsigned threads = 1);

// Creates `dir` if needed and writes every share plus manifest.json.
void write_bundle(const ShareBundle& bundle, const std::filesystem::path& dir, bool ascii_pbm);

Manifest read_manifest(const std::filesystem::path& dir);
// Loads the share (and aux) images of the listed participants (0-based).
// Throws naming the first missing (participant, run).
std::vector<ShareImage> load_shares(const std::filesystem::path& dir, const Manifest& m,
                                    const std::vector<std::size_t>& participants);

struct DecodeResult {
  GreyImage levels;
  BitImage raster;  // the reconstructed subpixels
};

// Reversing reconstruction with the first k participants, or plain
// stacking of every listed participant when `stack_only` is set.
DecodeResult decode_image(const Scheme& scheme, std::size_t width, std::size_t height,
                          const std::vector<ShareImage>& shares, const std::vector<std::size_t>& participants,
                          bool stack_only = false, unsigned threads = 1);

struct MeasuredContrast {
  std::size_t level = 0;  // compares level+1 against level
  std::size_t max_weight_low = 0;
  std::size_t min_weight_high = 0;
  Rational alpha;
};

// For each pair of adjacent levels both present in `levels`, the worst
// case (min weight at q+1 minus max weight at q) divided by `width`. Each
// pixel owns `block` bits of a raster row; `width` bits starting at
// `offset` inside that block are counted.
std::vector<MeasuredContrast> measure_contrast(const GreyImage& levels, const BitImage& raster, std::size_t block,
                                               std::size_t offset, std::size_t width);

// Contrast of a decode against the secret it came from, counting only the
// bits a scheme assigns to levels (the matching block for scheme C).
std::vector<MeasuredContrast> measure_decode_contrast(const Scheme& scheme, const GreyImage& secret,
                                                      const DecodeResult& decoded,
                                                      const std::vector<std::size_t>& participants);

}  // namespace greyvc

#endif  // GREYVC_PIPELINE_HPP_
