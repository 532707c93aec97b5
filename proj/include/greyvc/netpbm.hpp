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

// PBM (P1/P4) and PGM (P2/P5) reading and writing.

#ifndef GREYVC_NETPBM_HPP_
#define GREYVC_NETPBM_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace greyvc {

// 1 is black, as in PBM.
struct BitImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> bits;

  BitImage() = default;
  BitImage(std::size_t w, std::size_t h) : width(w), height(h), bits(w * h, 0) {}
  std::uint8_t& at(std::size_t x, std::size_t y) { return bits[y * width + x]; }
  std::uint8_t at(std::size_t x, std::size_t y) const { return bits[y * width + x]; }
  friend bool operator==(const BitImage&, const BitImage&) = default;
};

// 8-bit samples, 0 is black, 255 white.
struct Gray8Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  Gray8Image() = default;
  Gray8Image(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h, 0) {}
  std::uint8_t& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
  friend bool operator==(const Gray8Image&, const Gray8Image&) = default;
};

std::string encode_pbm(const BitImage& img, bool ascii);
BitImage decode_pbm(std::string_view data);

// Samples with another maxval are rescaled to 0..255 with rounding.
std::string encode_pgm(const Gray8Image& img, bool ascii);
Gray8Image decode_pgm(std::string_view data);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view data);

BitImage read_pbm(const std::filesystem::path& path);
void write_pbm(const std::filesystem::path& path, const BitImage& img, bool ascii = false);
Gray8Image read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Gray8Image& img, bool ascii = false);

}  // namespace greyvc

#endif  // GREYVC_NETPBM_HPP_
