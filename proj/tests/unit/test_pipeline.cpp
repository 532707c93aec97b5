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
#include <vector>

#include "doctest.h"

#include "greyvc/errors.hpp"
#include "greyvc/pipeline.hpp"

using namespace greyvc;

namespace {

Scheme make(SchemeKind kind, std::size_t g = 3, std::uint64_t seed = 17) {
  SchemeSpec s;
  s.kind = kind;
  s.k = 2;
  s.n = 3;
  s.g = g;
  s.seed = seed;
  s.base = default_basis(kind, 2, 3);
  return Scheme(s);
}

GreyImage ramp(std::size_t w, std::size_t h, std::size_t g) {
  GreyImage img(w, h, g);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) img.at(x, y) = static_cast<std::uint16_t>((x + 2 * y) % g);
  }
  return img;
}

std::filesystem::path scratch(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("quantize and render") {
  Gray8Image img(4, 1);
  img.pixels = {0, 85, 170, 255};
  const auto q = quantize(img, 3);
  CHECK(q.levels == std::vector<std::uint16_t>{0, 0, 1, 2});
  const auto r = render_levels(q);
  CHECK(r.pixels == std::vector<std::uint8_t>{0, 0, 127, 255});
  CHECK_THROWS_AS(quantize(img, 1), ParameterError);
  CHECK(quantize(render_levels(ramp(5, 2, 4)), 4) == ramp(5, 2, 4));
}

TEST_CASE("encode geometry") {
  const auto s = make(SchemeKind::C);
  const auto b = encode_image(ramp(4, 3, 3), s);
  CHECK(b.shares.size() == 6);
  CHECK(b.shares[0].image.width == 4 * s.block_length());
  CHECK(b.shares[0].image.height == 3);
  CHECK(b.manifest.subset_order.size() == 3);
  CHECK(b.manifest.files.size() == 6);
}

TEST_CASE("decode recovers the secret with every pair") {
  for (auto kind : {SchemeKind::Baseline, SchemeKind::A, SchemeKind::B, SchemeKind::C}) {
    const auto s = make(kind);
    const auto secret = ramp(7, 5, 3);
    const auto b = encode_image(secret, s, 2);
    for (const auto& who : k_subsets(3, 2)) {
      const auto d = decode_image(s, 7, 5, b.shares, who);
      CHECK_MESSAGE(d.levels == secret, to_string(kind));
      const auto stacked = decode_image(s, 7, 5, b.shares, who, true);
      CHECK_MESSAGE(stacked.levels == secret, to_string(kind));
    }
  }
}

TEST_CASE("thread count does not change the shares") {
  const auto s = make(SchemeKind::A);
  const auto secret = ramp(9, 9, 3);
  const auto one = encode_image(secret, s, 1);
  const auto four = encode_image(secret, s, 4);
  REQUIRE(one.shares.size() == four.shares.size());
  for (std::size_t i = 0; i < one.shares.size(); ++i) CHECK(one.shares[i].image == four.shares[i].image);
  const auto other = encode_image(secret, make(SchemeKind::A, 3, 18), 1);
  bool differs = false;
  for (std::size_t i = 0; i < one.shares.size(); ++i) differs |= !(one.shares[i].image == other.shares[i].image);
  CHECK(differs);
}

TEST_CASE("bundle on disk") {
  const auto dir = scratch("greyvc_pipeline_bundle");
  const auto s = make(SchemeKind::B);
  const auto secret = ramp(3, 2, 3);
  write_bundle(encode_image(secret, s), dir, false);
  const auto m = read_manifest(dir);
  CHECK(m.scheme == SchemeKind::B);
  CHECK(m.runs == 3);
  CHECK(m.files.size() == 9);
  CHECK_FALSE(m.parity_rule.empty());
  const auto rebuilt = scheme_from_manifest(m);
  const std::vector<std::size_t> who{0, 2};
  const auto shares = load_shares(dir, m, who);
  CHECK(shares.size() == 6);
  CHECK(decode_image(rebuilt, m.width, m.height, shares, who).levels == secret);

  std::filesystem::remove(dir / share_filename(2, 1, ShareKind::Share));
  CHECK_THROWS(load_shares(dir, m, who));
  std::filesystem::remove_all(dir);
}

TEST_CASE("manifest json round trip") {
  const auto b = encode_image(ramp(2, 2, 3), make(SchemeKind::C));
  const auto back = manifest_from_json(manifest_to_json(b.manifest));
  CHECK(manifest_to_json(back) == manifest_to_json(b.manifest));
  auto j = manifest_to_json(b.manifest);
  j.erase("k");
  CHECK_THROWS(manifest_from_json(j));
}

TEST_CASE("measured decode contrast") {
  const auto s = make(SchemeKind::A);
  const auto secret = ramp(6, 6, 3);
  const auto b = encode_image(secret, s);
  const std::vector<std::size_t> who{0, 1};
  const auto d = decode_image(s, 6, 6, b.shares, who);
  const auto mc = measure_decode_contrast(s, secret, d, who);
  REQUIRE(mc.size() == 2);
  CHECK(mc[0].alpha == Rational(1, 2));
  CHECK(mc[1].alpha == Rational(1, 2));
}
