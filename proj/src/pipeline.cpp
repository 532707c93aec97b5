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

#include "greyvc/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "greyvc/errors.hpp"
#include "greyvc/rng.hpp"

namespace greyvc {

namespace {

using nlohmann::json;

// Runs body(y) for every row, split over up to `threads` workers. The
// first exception is rethrown on the calling thread.
template <typename Body>
void for_each_row(std::size_t height, unsigned threads, Body body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, height));
  if (workers == 1) {
    for (std::size_t y = 0; y < height; ++y) body(y);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t y = w; y < height; y += workers) body(y);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

const char* kind_name(ShareKind k) { return k == ShareKind::Aux ? "aux" : "share"; }

ShareKind parse_kind(const std::string& s) {
  if (s == "aux") return ShareKind::Aux;
  if (s == "share") return ShareKind::Share;
  throw FormatError("manifest: unknown file kind '" + s + "'");
}

PermutationMethod parse_method(const std::string& s) {
  if (s == "within-block") return PermutationMethod::WithinBlock;
  if (s == "locked") return PermutationMethod::Locked;
  if (s == "full") return PermutationMethod::Full;
  throw FormatError("manifest: unknown permutation '" + s + "'");
}

void put_block(BitImage& img, std::size_t x0, std::size_t y, const BoolVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) img.at(x0 + i, y) = v[i] ? 1 : 0;
}

BoolVector get_block(const BitImage& img, std::size_t x0, std::size_t y, std::size_t len) {
  std::vector<std::uint8_t> bits(len);
  for (std::size_t i = 0; i < len; ++i) bits[i] = img.at(x0 + i, y);
  return BoolVector(std::move(bits));
}

}  // namespace

GreyImage quantize(const Gray8Image& img, std::size_t g) {
  if (g < 2) throw ParameterError("g must be at least 2 (got " + std::to_string(g) + ")");
  if (g > 256) throw ParameterError("g must be at most 256 for 8-bit input (got " + std::to_string(g) + ")");
  GreyImage out(img.width, img.height, g);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    out.levels[i] = static_cast<std::uint16_t>(std::min<std::size_t>(img.pixels[i] * g / 256, g - 1));
  }
  return out;
}

Gray8Image render_levels(const GreyImage& img) {
  if (img.g < 2) throw ParameterError("render_levels: g must be at least 2");
  Gray8Image out(img.width, img.height);
  for (std::size_t i = 0; i < img.levels.size(); ++i) {
    out.pixels[i] = static_cast<std::uint8_t>(std::size_t{img.levels[i]} * 255 / (img.g - 1));
  }
  return out;
}

json manifest_to_json(const Manifest& m) {
  json j;
  j["scheme"] = to_string(m.scheme);
  j["k"] = m.k;
  j["n"] = m.n;
  j["g"] = m.g;
  j["m"] = m.m;
  j["seed"] = m.seed;
  j["runs"] = m.runs;
  j["block_length"] = m.block_length;
  j["width"] = m.width;
  j["height"] = m.height;
  j["permutation"] = to_string(m.method);
  if (m.subset_order.empty()) {
    j["subset_order"] = nullptr;
  } else {
    json order = json::array();
    for (const auto& s : m.subset_order) {
      json one = json::array();
      for (auto p : s) one.push_back(p + 1);
      order.push_back(one);
    }
    j["subset_order"] = order;
  }
  j["parity_rule"] = m.parity_rule.empty() ? json(nullptr) : json(m.parity_rule);
  j["basis"] = {{"B0", m.b0.row_strings()}, {"B1", m.b1.row_strings()}};
  json files = json::array();
  for (const auto& f : m.files) {
    files.push_back({{"participant", f.participant}, {"run", f.run}, {"kind", kind_name(f.kind)}, {"path", f.path}});
  }
  j["files"] = files;
  return j;
}

Manifest manifest_from_json(const json& j) {
  try {
    Manifest m;
    m.scheme = parse_scheme_kind(j.at("scheme").get<std::string>());
    m.k = j.at("k").get<std::size_t>();
    m.n = j.at("n").get<std::size_t>();
    m.g = j.at("g").get<std::size_t>();
    m.m = j.at("m").get<std::size_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.runs = j.at("runs").get<std::size_t>();
    m.block_length = j.at("block_length").get<std::size_t>();
    m.width = j.at("width").get<std::size_t>();
    m.height = j.at("height").get<std::size_t>();
    m.method = parse_method(j.value("permutation", std::string("within-block")));
    if (j.contains("subset_order") && !j.at("subset_order").is_null()) {
      for (const auto& s : j.at("subset_order")) {
        Subset one;
        for (const auto& p : s) {
          const auto v = p.get<std::size_t>();
          if (v == 0) throw FormatError("manifest: participants are 1-based");
          one.push_back(v - 1);
        }
        m.subset_order.push_back(std::move(one));
      }
    }
    if (j.contains("parity_rule") && !j.at("parity_rule").is_null()) m.parity_rule = j.at("parity_rule").get<std::string>();
    const auto b0 = j.at("basis").at("B0").get<std::vector<std::string>>();
    const auto b1 = j.at("basis").at("B1").get<std::vector<std::string>>();
    m.b0 = BoolMatrix::parse_rows(b0);
    m.b1 = BoolMatrix::parse_rows(b1);
    for (const auto& f : j.at("files")) {
      m.files.push_back({f.at("participant").get<std::size_t>(), f.at("run").get<std::size_t>(),
                         parse_kind(f.at("kind").get<std::string>()), f.at("path").get<std::string>()});
    }
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
}

Scheme scheme_from_manifest(const Manifest& m) {
  SchemeSpec spec;
  spec.kind = m.scheme;
  spec.k = m.k;
  spec.n = m.n;
  spec.g = m.g;
  spec.seed = m.seed;
  spec.method = m.method;
  spec.subset_order = m.subset_order;
  spec.base = make_pair(m.k, m.b0, m.b1);
  Scheme s(spec);
  if (s.runs() != m.runs || s.block_length() != m.block_length || s.m() != m.m) {
    throw FormatError("manifest: runs/block_length/m disagree with the scheme parameters");
  }
  return s;
}

std::string share_filename(std::size_t participant, std::size_t run, ShareKind kind) {
  if (kind == ShareKind::Aux) return "p" + std::to_string(participant + 1) + "_aux.pbm";
  return "p" + std::to_string(participant + 1) + "_r" + std::to_string(run + 1) + ".pbm";
}

ShareBundle encode_image(const GreyImage& img, const Scheme& scheme, unsigned threads) {
  const auto& spec = scheme.spec();
  if (img.g != spec.g) {
    throw ParameterError("image has " + std::to_string(img.g) + " levels but scheme " + to_string(spec.kind) +
                         " was set up for g=" + std::to_string(spec.g));
  }
  for (auto q : img.levels) {
    if (q >= spec.g) throw ParameterError("image level " + std::to_string(q) + " out of range");
  }
  const std::size_t runs = scheme.runs();
  const std::size_t len = scheme.block_length();
  const bool has_aux = scheme.aux_matrices() != nullptr;

  ShareBundle b;
  auto& man = b.manifest;
  man.scheme = spec.kind;
  man.k = spec.k;
  man.n = spec.n;
  man.g = spec.g;
  man.m = scheme.m();
  man.seed = spec.seed;
  man.runs = runs;
  man.block_length = len;
  man.width = img.width;
  man.height = img.height;
  man.method = spec.method;
  if (has_aux) man.subset_order = scheme.aux_matrices()->subsets;
  if (spec.kind == SchemeKind::B) {
    man.parity_rule = scheme.complements() ? "m-h odd: complement the XOR of runs"
                                           : "m-h even: XOR of runs is the result";
  }
  man.b0 = spec.base.b0;
  man.b1 = spec.base.b1;

  // index = participant * runs + run; aux images follow at n * runs + participant.
  std::vector<BitImage> images(spec.n * runs + (has_aux ? spec.n : 0), BitImage(img.width * len, img.height));
  for_each_row(img.height, threads, [&](std::size_t y) {
    for (std::size_t x = 0; x < img.width; ++x) {
      Rng rng = Rng::for_pixel(spec.seed, y, x);
      const PixelShares px = scheme.distribute(img.at(x, y), rng);
      for (std::size_t p = 0; p < spec.n; ++p) {
        for (std::size_t r = 0; r < runs; ++r) put_block(images[p * runs + r], x * len, y, px.blocks[p][r]);
        if (has_aux) put_block(images[spec.n * runs + p], x * len, y, px.aux[p]);
      }
    }
  });

  for (std::size_t p = 0; p < spec.n; ++p) {
    for (std::size_t r = 0; r < runs; ++r) {
      b.shares.push_back({p, r, ShareKind::Share, std::move(images[p * runs + r])});
      man.files.push_back({p + 1, r + 1, ShareKind::Share, share_filename(p, r, ShareKind::Share)});
    }
  }
  if (has_aux) {
    for (std::size_t p = 0; p < spec.n; ++p) {
      b.shares.push_back({p, 0, ShareKind::Aux, std::move(images[spec.n * runs + p])});
      man.files.push_back({p + 1, runs + 1, ShareKind::Aux, share_filename(p, 0, ShareKind::Aux)});
    }
  }
  return b;
}

void write_bundle(const ShareBundle& bundle, const std::filesystem::path& dir, bool ascii_pbm) {
  std::filesystem::create_directories(dir);
  for (const auto& s : bundle.shares) write_pbm(dir / share_filename(s.participant, s.run, s.kind), s.image, ascii_pbm);
  write_file(dir / "manifest.json", manifest_to_json(bundle.manifest).dump(2) + "\n");
}

Manifest read_manifest(const std::filesystem::path& dir) {
  const auto path = dir / "manifest.json";
  if (!std::filesystem::exists(path)) throw std::runtime_error("missing " + path.string());
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return manifest_from_json(j);
}

std::vector<ShareImage> load_shares(const std::filesystem::path& dir, const Manifest& m,
                                    const std::vector<std::size_t>& participants) {
  std::map<std::pair<std::size_t, std::size_t>, std::string> share_path;
  std::map<std::size_t, std::string> aux_path;
  for (const auto& f : m.files) {
    if (f.participant == 0 || f.run == 0) throw FormatError("manifest: participant and run are 1-based");
    if (f.kind == ShareKind::Aux) {
      aux_path[f.participant - 1] = f.path;
    } else {
      share_path[{f.participant - 1, f.run - 1}] = f.path;
    }
  }
  const bool needs_aux = m.scheme == SchemeKind::C;
  std::vector<ShareImage> out;
  auto load = [&](std::size_t p, std::size_t r, ShareKind kind, const std::string* rel) {
    const std::string what = "participant " + std::to_string(p + 1) +
                             (kind == ShareKind::Aux ? ", aux share" : ", run " + std::to_string(r + 1));
    if (!rel) throw std::runtime_error("manifest lists no file for " + what);
    const auto path = dir / *rel;
    if (!std::filesystem::exists(path)) throw std::runtime_error("missing share file for " + what + ": " + path.string());
    BitImage img = read_pbm(path);
    if (img.width != m.width * m.block_length || img.height != m.height) {
      throw FormatError(path.string() + ": expected " + std::to_string(m.width * m.block_length) + "x" +
                        std::to_string(m.height) + " subpixels");
    }
    out.push_back({p, r, kind, std::move(img)});
  };
  for (std::size_t p : participants) {
    if (p >= m.n) throw ParameterError("participant " + std::to_string(p + 1) + " out of range 1.." + std::to_string(m.n));
    for (std::size_t r = 0; r < m.runs; ++r) {
      auto it = share_path.find({p, r});
      load(p, r, ShareKind::Share, it == share_path.end() ? nullptr : &it->second);
    }
    if (needs_aux) {
      auto it = aux_path.find(p);
      load(p, 0, ShareKind::Aux, it == aux_path.end() ? nullptr : &it->second);
    }
  }
  return out;
}

DecodeResult decode_image(const Scheme& scheme, std::size_t width, std::size_t height,
                          const std::vector<ShareImage>& shares, const std::vector<std::size_t>& participants,
                          bool stack_only, unsigned threads) {
  const auto& spec = scheme.spec();
  if (participants.size() < spec.k) {
    throw ParameterError("need at least k=" + std::to_string(spec.k) + " participants, got " +
                         std::to_string(participants.size()));
  }
  const std::size_t runs = scheme.runs();
  const std::size_t len = scheme.block_length();
  const bool has_aux = scheme.aux_matrices() != nullptr;

  std::vector<std::vector<const BitImage*>> share_img(spec.n, std::vector<const BitImage*>(runs, nullptr));
  std::vector<const BitImage*> aux_img(spec.n, nullptr);
  for (const auto& s : shares) {
    if (s.participant >= spec.n) continue;
    if (s.kind == ShareKind::Aux) {
      aux_img[s.participant] = &s.image;
    } else if (s.run < runs) {
      share_img[s.participant][s.run] = &s.image;
    }
  }
  for (std::size_t p : participants) {
    if (p >= spec.n) throw ParameterError("participant " + std::to_string(p + 1) + " out of range");
    for (std::size_t r = 0; r < runs; ++r) {
      const BitImage* img = share_img[p][r];
      if (!img) {
        throw std::runtime_error("missing share: participant " + std::to_string(p + 1) + ", run " + std::to_string(r + 1));
      }
      if (img->width != width * len || img->height != height) {
        throw FormatError("share for participant " + std::to_string(p + 1) + ", run " + std::to_string(r + 1) +
                          " has the wrong size");
      }
    }
    if (has_aux && !stack_only) {
      if (!aux_img[p]) throw std::runtime_error("missing aux share: participant " + std::to_string(p + 1));
      if (aux_img[p]->width != width * len || aux_img[p]->height != height) {
        throw FormatError("aux share for participant " + std::to_string(p + 1) + " has the wrong size");
      }
    }
  }

  const std::size_t out_len = stack_only ? runs * len : scheme.reconstructed_length();
  DecodeResult res;
  res.levels = GreyImage(width, height, spec.g);
  res.raster = BitImage(width * out_len, height);
  std::vector<std::size_t> stack_weights;
  if (stack_only) {
    stack_weights = scheme.stack_only_weights(participants);
  } else if (spec.kind == SchemeKind::Baseline) {
    const std::vector<std::size_t> first_k(participants.begin(), participants.begin() + static_cast<std::ptrdiff_t>(spec.k));
    stack_weights = scheme.stack_only_weights(first_k);
  }

  for_each_row(height, threads, [&](std::size_t y) {
    PixelShares px;
    px.runs = runs;
    px.blocks.assign(spec.n, {});
    if (has_aux) px.aux.assign(spec.n, BoolVector());
    CopyMachine cm;
    for (std::size_t x = 0; x < width; ++x) {
      for (std::size_t p : participants) {
        auto& mine = px.blocks[p];
        mine.clear();
        for (std::size_t r = 0; r < runs; ++r) mine.push_back(get_block(*share_img[p][r], x * len, y, len));
        if (has_aux && !stack_only) px.aux[p] = get_block(*aux_img[p], x * len, y, len);
      }
      BoolVector rec = stack_only ? scheme.stack_only(px, participants, cm) : scheme.reconstruct(px, participants, cm);
      put_block(res.raster, x * out_len, y, rec);
      const std::size_t level = stack_weights.empty() ? scheme.decode_level(rec, participants)
                                                      : Scheme::nearest_level(stack_weights, hamming(rec));
      res.levels.at(x, y) = static_cast<std::uint16_t>(level);
    }
  });
  return res;
}

std::vector<MeasuredContrast> measure_contrast(const GreyImage& levels, const BitImage& raster, std::size_t block,
                                               std::size_t offset, std::size_t width) {
  if (block == 0 || width == 0 || offset + width > block) throw ParameterError("measure_contrast: bad block geometry");
  if (raster.width != levels.width * block || raster.height != levels.height) {
    throw ParameterError("measure_contrast: raster does not match the level image");
  }
  std::vector<std::size_t> lo(levels.g, std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> hi(levels.g, 0);
  std::vector<bool> present(levels.g, false);
  for (std::size_t y = 0; y < levels.height; ++y) {
    for (std::size_t x = 0; x < levels.width; ++x) {
      const std::size_t q = levels.at(x, y);
      std::size_t w = 0;
      for (std::size_t i = 0; i < width; ++i) w += raster.at(x * block + offset + i, y);
      lo[q] = std::min(lo[q], w);
      hi[q] = std::max(hi[q], w);
      present[q] = true;
    }
  }
  std::vector<MeasuredContrast> out;
  for (std::size_t q = 0; q + 1 < levels.g; ++q) {
    if (!present[q] || !present[q + 1]) continue;
    MeasuredContrast c;
    c.level = q;
    c.max_weight_low = hi[q];
    c.min_weight_high = lo[q + 1];
    c.alpha = Rational(static_cast<long long>(lo[q + 1]) - static_cast<long long>(hi[q]), static_cast<long long>(width));
    out.push_back(c);
  }
  return out;
}

std::vector<MeasuredContrast> measure_decode_contrast(const Scheme& scheme, const GreyImage& secret,
                                                      const DecodeResult& decoded,
                                                      const std::vector<std::size_t>& participants) {
  if (secret.width == 0) return {};
  const std::size_t block = decoded.raster.width / secret.width;
  std::size_t offset = 0;
  std::size_t width = block;
  const AuxMatrices* aux = scheme.aux_matrices();
  if (aux && block == scheme.reconstructed_length() && participants.size() >= scheme.spec().k) {
    Subset chosen(participants.begin(), participants.begin() + static_cast<std::ptrdiff_t>(scheme.spec().k));
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t p = 0; p < aux->subsets.size(); ++p) {
      Subset s = aux->subsets[p];
      std::sort(s.begin(), s.end());
      if (s == chosen) offset = p * aux->m_g;
    }
    width = aux->m_g;
  }
  return measure_contrast(secret, decoded.raster, block, offset, width);
}

}  // namespace greyvc
