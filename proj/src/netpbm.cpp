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

#include "greyvc/netpbm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>

#include "greyvc/errors.hpp"

namespace greyvc {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string magic() {
    if (data_.size() < 2) throw FormatError("netpbm: truncated header");
    pos_ = 2;
    return std::string(data_.substr(0, 2));
  }

  std::size_t number(const char* what) {
    skip_space_and_comments();
    if (pos_ >= data_.size() || !std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      throw FormatError(std::string("netpbm: expected ") + what);
    }
    std::size_t v = 0;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      if (v > std::numeric_limits<std::size_t>::max() / 10 - 10) throw FormatError("netpbm: number too large");
      v = v * 10 + static_cast<std::size_t>(data_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  // Plain PBM allows bits without separators.
  std::uint8_t pbm_bit() {
    skip_space_and_comments();
    if (pos_ >= data_.size()) throw FormatError("netpbm: truncated raster");
    const char c = data_[pos_++];
    if (c != '0' && c != '1') throw FormatError("netpbm: P1 raster holds '" + std::string(1, c) + "'");
    return static_cast<std::uint8_t>(c - '0');
  }

  // Exactly one whitespace byte separates the header from a raw raster.
  std::string_view raster(std::size_t bytes) {
    if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
      throw FormatError("netpbm: missing separator before raster");
    }
    ++pos_;
    if (data_.size() - pos_ < bytes) throw FormatError("netpbm: truncated raster");
    const auto out = data_.substr(pos_, bytes);
    pos_ += bytes;
    return out;
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

void check_dims(std::size_t w, std::size_t h) {
  if (w == 0 || h == 0) throw FormatError("netpbm: zero image dimension");
  if (w > (1u << 24) || h > (1u << 24) || w * h > (std::size_t{1} << 32)) {
    throw FormatError("netpbm: image too large");
  }
}

}  // namespace

std::string encode_pbm(const BitImage& img, bool ascii) {
  std::string out = std::string(ascii ? "P1" : "P4") + "\n" + std::to_string(img.width) + " " +
                    std::to_string(img.height) + "\n";
  if (ascii) {
    for (std::size_t y = 0; y < img.height; ++y) {
      std::size_t on_line = 0;
      for (std::size_t x = 0; x < img.width; ++x) {
        out += img.at(x, y) ? '1' : '0';
        // Plain PBM lines should stay under 70 characters.
        if (++on_line == 64 && x + 1 < img.width) {
          out += '\n';
          on_line = 0;
        }
      }
      out += '\n';
    }
    return out;
  }
  const std::size_t stride = (img.width + 7) / 8;
  for (std::size_t y = 0; y < img.height; ++y) {
    for (std::size_t b = 0; b < stride; ++b) {
      unsigned byte = 0;
      for (std::size_t i = 0; i < 8; ++i) {
        const std::size_t x = b * 8 + i;
        if (x < img.width && img.at(x, y)) byte |= 0x80u >> i;
      }
      out += static_cast<char>(byte);
    }
  }
  return out;
}

BitImage decode_pbm(std::string_view data) {
  Reader rd(data);
  const std::string magic = rd.magic();
  if (magic != "P1" && magic != "P4") throw FormatError("not a PBM file (magic " + magic + ")");
  const std::size_t w = rd.number("width");
  const std::size_t h = rd.number("height");
  check_dims(w, h);
  BitImage img(w, h);
  if (magic == "P1") {
    for (auto& b : img.bits) b = rd.pbm_bit();
    return img;
  }
  const std::size_t stride = (w + 7) / 8;
  const auto raw = rd.raster(stride * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const auto byte = static_cast<unsigned char>(raw[y * stride + x / 8]);
      img.at(x, y) = (byte >> (7 - x % 8)) & 1u;
    }
  }
  return img;
}

std::string encode_pgm(const Gray8Image& img, bool ascii) {
  std::string out = std::string(ascii ? "P2" : "P5") + "\n" + std::to_string(img.width) + " " +
                    std::to_string(img.height) + "\n255\n";
  if (ascii) {
    for (std::size_t y = 0; y < img.height; ++y) {
      for (std::size_t x = 0; x < img.width; ++x) {
        if (x) out += ' ';
        out += std::to_string(img.at(x, y));
      }
      out += '\n';
    }
    return out;
  }
  out.append(img.pixels.begin(), img.pixels.end());
  return out;
}

Gray8Image decode_pgm(std::string_view data) {
  Reader rd(data);
  const std::string magic = rd.magic();
  if (magic != "P2" && magic != "P5") throw FormatError("not a PGM file (magic " + magic + ")");
  const std::size_t w = rd.number("width");
  const std::size_t h = rd.number("height");
  const std::size_t maxval = rd.number("maxval");
  check_dims(w, h);
  if (maxval == 0 || maxval > 65535) throw FormatError("PGM maxval must be in 1..65535");
  auto scale = [maxval](std::size_t v) {
    if (v > maxval) throw FormatError("PGM sample exceeds maxval");
    return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
  };
  Gray8Image img(w, h);
  if (magic == "P2") {
    for (auto& p : img.pixels) p = scale(rd.number("sample"));
    return img;
  }
  const std::size_t bpp = maxval < 256 ? 1 : 2;
  const auto raw = rd.raster(w * h * bpp);
  for (std::size_t i = 0; i < w * h; ++i) {
    std::size_t v = static_cast<unsigned char>(raw[i * bpp]);
    if (bpp == 2) v = (v << 8) | static_cast<unsigned char>(raw[i * bpp + 1]);
    img.pixels[i] = scale(v);
  }
  return img;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

BitImage read_pbm(const std::filesystem::path& path) {
  try {
    return decode_pbm(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_pbm(const std::filesystem::path& path, const BitImage& img, bool ascii) {
  write_file(path, encode_pbm(img, ascii));
}

Gray8Image read_pgm(const std::filesystem::path& path) {
  try {
    return decode_pgm(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_pgm(const std::filesystem::path& path, const Gray8Image& img, bool ascii) {
  write_file(path, encode_pgm(img, ascii));
}

}  // namespace greyvc
