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

#include <filesystem>
#include <string>

#include "doctest.h"

#include "greyvc/errors.hpp"
#include "greyvc/netpbm.hpp"

using namespace greyvc;

namespace {

BitImage sample_bits() {
  BitImage img(11, 3);
  for (std::size_t y = 0; y < 3; ++y) {
    for (std::size_t x = 0; x < 11; ++x) img.at(x, y) = (x * 7 + y) % 3 == 0;
  }
  return img;
}

}  // namespace

TEST_CASE("pbm round trip, plain and raw") {
  const auto img = sample_bits();
  CHECK(decode_pbm(encode_pbm(img, true)) == img);
  CHECK(decode_pbm(encode_pbm(img, false)) == img);
  // Raw rows are padded to whole bytes.
  CHECK(encode_pbm(img, false).size() == std::string("P4\n11 3\n").size() + 2 * 3);
}

TEST_CASE("pbm reader accepts comments and packed plain digits") {
  const auto img = decode_pbm("P1\n# note\n3 2\n101\n0 1 0\n");
  CHECK(img.width == 3);
  CHECK(img.at(0, 0) == 1);
  CHECK(img.at(1, 1) == 1);
  CHECK(img.at(2, 1) == 0);
}

TEST_CASE("pgm round trip and maxval rescale") {
  Gray8Image img(4, 2);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = static_cast<std::uint8_t>(i * 37);
  CHECK(decode_pgm(encode_pgm(img, true)) == img);
  CHECK(decode_pgm(encode_pgm(img, false)) == img);
  const auto scaled = decode_pgm("P2\n2 1\n15\n0 15\n");
  CHECK(scaled.at(0, 0) == 0);
  CHECK(scaled.at(1, 0) == 255);
}

TEST_CASE("malformed images") {
  CHECK_THROWS_AS(decode_pbm("P3\n1 1\n0\n"), FormatError);
  CHECK_THROWS_AS(decode_pbm("P1\n2 2\n1 0 1\n"), FormatError);
  CHECK_THROWS_AS(decode_pgm("P5\n2 2\n255\n\x01"), FormatError);
  CHECK_THROWS_AS(decode_pgm("P2\n1 1\n0\n"), FormatError);
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "greyvc_netpbm_test";
  std::filesystem::create_directories(dir);
  const auto img = sample_bits();
  write_pbm(dir / "a.pbm", img);
  CHECK(read_pbm(dir / "a.pbm") == img);
  CHECK_THROWS(read_file(dir / "missing.pbm"));
  std::filesystem::remove_all(dir);
}
