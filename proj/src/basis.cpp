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

#include "greyvc/basis.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "greyvc/errors.hpp"

namespace greyvc {

namespace {

std::size_t or_weight(const BoolMatrix& m, const Subset& s) { return hamming(or_rows(m, s)); }

// Every subset of [0, n) with 1..max_size elements.
std::vector<Subset> small_subsets(std::size_t n, std::size_t max_size) {
  std::vector<Subset> out;
  for (std::size_t t = 1; t <= max_size && t <= n; ++t) {
    auto s = k_subsets(n, t);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

std::size_t factorial_capped(std::size_t m, std::size_t cap) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= m; ++i) {
    if (f > cap / i) return cap + 1;
    f *= i;
  }
  return f;
}

std::map<std::string, std::size_t> all_permutations_multiset(const BoolMatrix& m) {
  std::map<std::string, std::size_t> seen;
  Permutation p = identity_permutation(m.cols());
  do {
    ++seen[permute_columns(m, p).str()];
  } while (std::next_permutation(p.begin(), p.end()));
  return seen;
}

std::vector<std::string> nonblank_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

std::size_t parse_count(const std::string& tok, const char* what) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw FormatError(std::string("matrix header: bad ") + what + " '" + tok + "'");
  }
  return v;
}

BoolMatrix parse_matrix_lines(const std::vector<std::string>& lines, std::size_t& pos) {
  if (pos >= lines.size()) throw FormatError("matrix: missing \"n m\" header");
  std::istringstream hdr(lines[pos]);
  std::string rs, cs, extra;
  if (!(hdr >> rs >> cs) || (hdr >> extra)) {
    throw FormatError("matrix: header must be \"n m\", got '" + lines[pos] + "'");
  }
  const std::size_t n = parse_count(rs, "row count");
  const std::size_t m = parse_count(cs, "column count");
  if (n == 0 || m == 0) throw FormatError("matrix: dimensions must be positive");
  ++pos;
  std::vector<BoolVector> rows;
  for (std::size_t r = 0; r < n; ++r, ++pos) {
    if (pos >= lines.size()) throw FormatError("matrix: expected " + std::to_string(n) + " rows");
    std::string row = lines[pos];
    row.erase(std::remove_if(row.begin(), row.end(), [](char c) { return c == ' ' || c == '\t'; }),
              row.end());
    BoolVector v = BoolVector::parse(row);
    if (v.size() != m) {
      throw FormatError("matrix: row " + std::to_string(r + 1) + " has " + std::to_string(v.size()) +
                        " bits, expected " + std::to_string(m));
    }
    rows.push_back(std::move(v));
  }
  return BoolMatrix::from_rows(rows);
}

}  // namespace

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  auto parse_ll = [&](std::string_view s) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
      throw FormatError("bad rational '" + std::string(text) + "'");
    }
    return v;
  };
  if (slash == std::string_view::npos) return Rational(parse_ll(text));
  const long long den = parse_ll(text.substr(slash + 1));
  if (den == 0) throw FormatError("bad rational '" + std::string(text) + "': zero denominator");
  return Rational(parse_ll(text.substr(0, slash)), den);
}

std::vector<Subset> k_subsets(std::size_t n, std::size_t k) {
  std::vector<Subset> out;
  if (k > n) return out;
  Subset s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BasisPair make_pair(std::size_t k, BoolMatrix b0, BoolMatrix b1) {
  if (b0.rows() != b1.rows() || b0.cols() != b1.cols()) {
    throw ParameterError("basis pair: B0 is " + std::to_string(b0.rows()) + "x" + std::to_string(b0.cols()) +
                         " but B1 is " + std::to_string(b1.rows()) + "x" + std::to_string(b1.cols()));
  }
  if (b0.rows() == 0 || b0.cols() == 0) throw ParameterError("basis pair: matrices must be non-empty");
  if (k < 1 || k > b0.rows()) {
    throw ParameterError("basis pair: threshold k=" + std::to_string(k) + " outside [1, " +
                         std::to_string(b0.rows()) + "]");
  }
  BasisPair p;
  p.k = k;
  p.n = b0.rows();
  p.m = b0.cols();
  std::size_t max0 = 0;
  std::size_t min1 = p.m;
  for (const auto& s : k_subsets(p.n, k)) {
    max0 = std::max(max0, or_weight(b0, s));
    min1 = std::min(min1, or_weight(b1, s));
  }
  p.h = p.m - max0;
  p.l = p.m - min1;
  p.alpha = Rational(static_cast<long long>(p.h) - static_cast<long long>(p.l), static_cast<long long>(p.m));
  p.b0 = std::move(b0);
  p.b1 = std::move(b1);
  return p;
}

BasisPair naor_shamir_kk(std::size_t k) {
  if (k < 2) throw ParameterError("naor_shamir_kk: k must be at least 2");
  if (k > 20) throw ParameterError("naor_shamir_kk: k too large");
  const std::size_t m = std::size_t{1} << (k - 1);
  BoolMatrix b0(k, m), b1(k, m);
  std::size_t c0 = 0, c1 = 0;
  for (std::size_t pattern = (std::size_t{1} << k); pattern-- > 0;) {
    const bool odd = (std::popcount(pattern) & 1) != 0;
    BoolMatrix& dst = odd ? b1 : b0;
    std::size_t& col = odd ? c1 : c0;
    for (std::size_t r = 0; r < k; ++r) dst.set(r, col, ((pattern >> (k - 1 - r)) & 1) != 0);
    ++col;
  }
  return make_pair(k, std::move(b0), std::move(b1));
}

BasisValidation validate_basis(const BasisPair& pair, const ValidationOptions& opts) {
  BasisValidation v;
  if (pair.b0.rows() != pair.b1.rows() || pair.b0.cols() != pair.b1.cols() || pair.b0.rows() != pair.n ||
      pair.b0.cols() != pair.m) {
    v.shape_ok = false;
    v.problems.push_back("B0 and B1 differ in shape");
    return v;
  }
  v.contrast_ok = pair.h > pair.l;
  if (!v.contrast_ok) {
    v.problems.push_back("no contrast: h=" + std::to_string(pair.h) + " l=" + std::to_string(pair.l));
  }

  const bool enumerate = factorial_capped(pair.m, opts.enumeration_cap) <= opts.enumeration_cap;
  if (!enumerate && !opts.allow_fallback) {
    v.security_mode = SecurityCheck::Skipped;
    v.problems.push_back("security check skipped: " + std::to_string(pair.m) +
                         "! column permutations exceed the enumeration cap");
    return v;
  }
  v.security_mode = enumerate ? SecurityCheck::Exhaustive : SecurityCheck::ColumnMultiset;
  v.security_ok = true;
  // Equality on every (k-1)-row restriction implies it for smaller ones.
  if (pair.k >= 2) {
    for (const auto& s : k_subsets(pair.n, pair.k - 1)) {
      const BoolMatrix r0 = restrict_rows(pair.b0, s);
      const BoolMatrix r1 = restrict_rows(pair.b1, s);
      const bool same = enumerate ? all_permutations_multiset(r0) == all_permutations_multiset(r1)
                                  : column_multiset(r0) == column_multiset(r1);
      if (!same) {
        v.security_ok = false;
        std::string rows;
        for (auto i : s) rows += (rows.empty() ? "" : ",") + std::to_string(i + 1);
        v.problems.push_back("rows {" + rows + "} distinguish B0 from B1");
      }
    }
  }
  return v;
}

bool is_perfect_black(const BasisPair& pair) { return pair.l == Rational(0); }

GreyFamily build_grey_family(const BasisPair& pair, std::size_t g) {
  if (g < 2) throw ParameterError("grey family: g must be at least 2 (got " + std::to_string(g) + ")");
  GreyFamily fam;
  fam.g = g;
  fam.k = pair.k;
  fam.n = pair.n;
  fam.base = pair;
  fam.layout = BlockLayout::uniform(g - 1, pair.m);
  fam.m_g = (g - 1) * pair.m;
  for (std::size_t q = 0; q < g; ++q) {
    BoolMatrix level;
    for (std::size_t b = 0; b + 1 < g; ++b) level = concat(level, fam.block_is_b1(q, b) ? pair.b1 : pair.b0);
    fam.levels.push_back(std::move(level));
  }
  for (const auto& lc : check_levels(fam.levels, fam.k, fam.layout).adjacent) fam.alphas.push_back(lc.alpha);
  return fam;
}

bool ContrastReport::satisfied() const {
  return small_coalitions_equal && small_coalitions_blockwise_equal &&
         std::all_of(adjacent.begin(), adjacent.end(), [](const LevelContrast& c) { return c.separated; });
}

ContrastReport check_levels(const std::vector<BoolMatrix>& levels, std::size_t k, const BlockLayout& layout) {
  ContrastReport rep;
  if (levels.size() < 2) throw ParameterError("check_levels: need at least two levels");
  const std::size_t n = levels.front().rows();
  const std::size_t width = levels.front().cols();
  for (const auto& lv : levels) {
    if (lv.rows() != n || lv.cols() != width) throw ParameterError("check_levels: levels differ in shape");
  }
  const BlockLayout blocks = layout.count() == 0 ? BlockLayout({width}) : layout;
  if (blocks.total() != width) throw ParameterError("check_levels: layout does not match level width");
  const auto full = k_subsets(n, k);

  rep.min_alpha = Rational(std::numeric_limits<long long>::max());
  for (std::size_t q = 0; q + 1 < levels.size(); ++q) {
    LevelContrast lc;
    lc.level = q;
    lc.d = width;
    for (const auto& s : full) {
      lc.max_weight_low = std::max(lc.max_weight_low, or_weight(levels[q], s));
      lc.d = std::min(lc.d, or_weight(levels[q + 1], s));
    }
    lc.alpha = Rational(static_cast<long long>(lc.d) - static_cast<long long>(lc.max_weight_low),
                        static_cast<long long>(width));
    lc.separated = lc.d > lc.max_weight_low;
    if (!lc.separated) {
      rep.problems.push_back("levels " + std::to_string(q) + " and " + std::to_string(q + 1) +
                             " are not separated by any k-subset threshold");
    }
    rep.min_alpha = std::min(rep.min_alpha, lc.alpha);
    rep.adjacent.push_back(lc);
  }

  rep.small_coalitions_equal = true;
  rep.small_coalitions_blockwise_equal = true;
  for (const auto& s : small_subsets(n, k - 1)) {
    const std::size_t w0 = or_weight(levels.front(), s);
    std::vector<std::vector<std::string>> ref;
    for (std::size_t b = 0; b < blocks.count(); ++b) {
      ref.push_back(column_multiset(restrict_rows(column_slice(levels.front(), blocks.offset(b), blocks.width(b)), s)));
    }
    for (std::size_t q = 1; q < levels.size(); ++q) {
      if (or_weight(levels[q], s) != w0) rep.small_coalitions_equal = false;
      for (std::size_t b = 0; b < blocks.count(); ++b) {
        const auto ms = column_multiset(restrict_rows(column_slice(levels[q], blocks.offset(b), blocks.width(b)), s));
        if (ms != ref[b]) rep.small_coalitions_blockwise_equal = false;
      }
    }
  }
  if (!rep.small_coalitions_equal) rep.problems.push_back("a coalition below threshold sees different weights");
  if (!rep.small_coalitions_blockwise_equal) {
    rep.problems.push_back("a coalition below threshold sees different block column multisets");
  }

  const auto g1 = static_cast<long long>(levels.size() - 1);
  rep.bound_literal = Rational(1, g1 * static_cast<long long>(width));
  rep.bound_corrected = Rational(1, static_cast<long long>(width));
  return rep;
}

ContrastReport check_grey_family(const GreyFamily& fam) { return check_levels(fam.levels, fam.k, fam.layout); }

std::size_t min_bits_for_levels(std::size_t g) {
  if (g < 2) throw ParameterError("min_bits_for_levels: g must be at least 2");
  return g - 1;
}

BoolMatrix parse_matrix(std::string_view text) {
  const auto lines = nonblank_lines(text);
  std::size_t pos = 0;
  BoolMatrix m = parse_matrix_lines(lines, pos);
  if (pos != lines.size()) throw FormatError("matrix: trailing content after last row");
  return m;
}

std::string format_matrix(const BoolMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (const auto& r : m.row_strings()) out += r + "\n";
  return out;
}

BasisPair parse_pair(std::string_view text, std::size_t k) {
  const auto lines = nonblank_lines(text);
  std::size_t pos = 0;
  BoolMatrix b0 = parse_matrix_lines(lines, pos);
  BoolMatrix b1 = parse_matrix_lines(lines, pos);
  if (pos != lines.size()) throw FormatError("pair: trailing content after B1");
  return make_pair(k, std::move(b0), std::move(b1));
}

std::string format_pair(const BasisPair& pair) { return format_matrix(pair.b0) + "\n" + format_matrix(pair.b1); }

BasisPair load_pair(const std::filesystem::path& path, std::size_t k) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open basis file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_pair(ss.str(), k);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace greyvc
