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

#include "greyvc/fixtures.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "greyvc/copy_machine.hpp"
#include "greyvc/errors.hpp"

namespace greyvc {

namespace {

const std::set<std::string> kDirectKinds = {"cimato-direct", "yang-direct", "hutzeng-direct"};

class LineError {
 public:
  LineError(const std::string& source, std::size_t line) : prefix_(source + ":" + std::to_string(line) + ": ") {}
  [[noreturn]] void fail(const std::string& msg) const { throw FormatError(prefix_ + msg); }

 private:
  std::string prefix_;
};

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::size_t to_count(const std::string& tok, const LineError& err) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) err.fail("expected a number, got '" + tok + "'");
  return v;
}

std::string normalize_bits(const std::string& tok, const LineError& err) {
  try {
    return BoolVector::parse(tok).str();
  } catch (const FormatError& e) {
    err.fail(e.what());
  }
}

FixtureCell parse_cell(const std::string& tok, const LineError& err) {
  const auto parts = split_on(tok, '!');
  if (parts.size() > 2) err.fail("cell '" + tok + "' has more than one '!'");
  FixtureCell c;
  c.printed = normalize_bits(parts[0], err);
  if (parts.size() == 2) c.replayed = normalize_bits(parts[1], err);
  return c;
}

Coalition parse_coalition(const std::string& tok, const LineError& err) {
  Coalition c;
  for (char ch : tok) {
    if (ch < '1' || ch > '9') err.fail("participant list '" + tok + "' must be digits 1-9");
    c.push_back(static_cast<std::size_t>(ch - '1'));
  }
  std::sort(c.begin(), c.end());
  if (c.empty() || std::adjacent_find(c.begin(), c.end()) != c.end()) {
    err.fail("participant list '" + tok + "' is empty or repeats a participant");
  }
  return c;
}

BoolMatrix parse_rows(const std::string& tok, const LineError& err) {
  std::vector<BoolVector> rows;
  try {
    for (const auto& r : split_on(tok, ';')) rows.push_back(BoolVector::parse(r));
    return BoolMatrix::from_rows(rows);
  } catch (const std::exception& e) {
    err.fail(std::string("bad matrix '") + tok + "': " + e.what());
  }
}

PermutationMethod parse_method(const std::string& tok, const LineError& err) {
  if (tok == "full") return PermutationMethod::Full;
  if (tok == "locked") return PermutationMethod::Locked;
  if (tok == "within") return PermutationMethod::WithinBlock;
  err.fail("unknown method '" + tok + "'");
}

std::string first_difference(const std::string& expected, const std::string& got) {
  if (expected.size() != got.size()) {
    return "length " + std::to_string(got.size()) + ", expected " + std::to_string(expected.size());
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] != got[i]) return "first differing bit " + std::to_string(i + 1);
  }
  return "equal";
}

}  // namespace

Fixture parse_fixture(std::string_view text, const std::string& source) {
  Fixture fx;
  fx.source = source;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  FixtureLevel* cur = nullptr;
  while (std::getline(in, line)) {
    ++lineno;
    const LineError err(source, lineno);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto tok = split_ws(line);
    const std::string& key = tok[0];
    auto need = [&](std::size_t count) {
      if (tok.size() < count + 1) err.fail("'" + key + "' needs " + std::to_string(count) + " argument(s)");
    };
    auto level = [&]() -> FixtureLevel& {
      if (!cur) err.fail("'" + key + "' outside a level section");
      return *cur;
    };

    if (key == "id") {
      need(1);
      fx.id = tok[1];
    } else if (key == "anchor") {
      fx.anchor = line.substr(line.find("anchor") + 6);
      fx.anchor.erase(0, fx.anchor.find_first_not_of(" \t"));
    } else if (key == "scheme") {
      need(1);
      fx.scheme = tok[1];
      if (!kDirectKinds.count(fx.scheme)) {
        try {
          parse_scheme_kind(fx.scheme);
        } catch (const std::exception&) {
          err.fail("unknown scheme '" + fx.scheme + "'");
        }
      }
    } else if (key == "pair") {
      need(1);
      fx.pair_file = tok[1];
    } else if (key == "k") {
      need(1);
      fx.k = to_count(tok[1], err);
    } else if (key == "n") {
      need(1);
      fx.n = to_count(tok[1], err);
    } else if (key == "g") {
      need(1);
      fx.g = to_count(tok[1], err);
    } else if (key == "method") {
      need(1);
      fx.method = parse_method(tok[1], err);
    } else if (key == "complement") {
      need(1);
      if (tok[1] != "yes" && tok[1] != "no") err.fail("complement must be yes or no");
      fx.complement = tok[1] == "yes";
    } else if (key == "subsets") {
      need(1);
      for (std::size_t i = 1; i < tok.size(); ++i) fx.subsets.push_back(parse_coalition(tok[i], err));
    } else if (key == "matrix") {
      need(2);
      fx.matrices.emplace_back(tok[1], parse_rows(tok[2], err));
    } else if (key == "contrast") {
      need(2);
      FixtureContrast c;
      c.coalition = parse_coalition(tok[1], err);
      for (std::size_t i = 2; i < tok.size(); ++i) {
        try {
          c.alphas.push_back(parse_rational(tok[i]));
        } catch (const FormatError& e) {
          err.fail(e.what());
        }
      }
      fx.contrasts.push_back(std::move(c));
    } else if (key == "failure") {
      need(1);
      FixtureFailure f;
      if (tok[1] == "collide") {
        need(3);
        f.kind = FixtureFailure::Kind::Collide;
        f.a = to_count(tok[2], err);
        f.b = to_count(tok[3], err);
      } else if (tok[1] == "uneven-contrast") {
        f.kind = FixtureFailure::Kind::UnevenContrast;
      } else {
        err.fail("unknown failure '" + tok[1] + "'");
      }
      fx.failures.push_back(f);
    } else if (key == "level") {
      need(1);
      FixtureLevel lv;
      lv.level = to_count(tok[1], err);
      fx.levels.push_back(std::move(lv));
      cur = &fx.levels.back();
    } else if (key == "perm") {
      need(1);
      Draw d;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        Permutation p;
        for (const auto& e : split_on(tok[i], ',')) p.push_back(to_count(e, err));
        if (!is_permutation(p, p.size())) err.fail("'" + tok[i] + "' is not a permutation");
        d.push_back(std::move(p));
      }
      level().perm = std::move(d);
    } else if (key == "chosen") {
      need(1);
      level().chosen = parse_rows(tok[1], err);
    } else if (key == "share") {
      need(2);
      auto& runs = level().shares[parse_coalition(tok[1], err).at(0)];
      if (tok[1].size() != 1) err.fail("share lines name one participant");
      for (std::size_t i = 2; i < tok.size(); ++i) runs.push_back(parse_cell(tok[i], err));
    } else if (key == "aux") {
      need(2);
      if (tok[1].size() != 1) err.fail("aux lines name one participant");
      level().aux[parse_coalition(tok[1], err).at(0)] = parse_cell(tok[2], err);
    } else if (key == "stack") {
      need(2);
      auto& cells = level().stacks[parse_coalition(tok[1], err)];
      for (std::size_t i = 2; i < tok.size(); ++i) cells.push_back(parse_cell(tok[i], err));
    } else if (key == "xor" || key == "or" || key == "result") {
      need(2);
      auto& dst = key == "xor" ? level().xors : key == "or" ? level().ors : level().results;
      dst[parse_coalition(tok[1], err)] = parse_cell(tok[2], err);
    } else {
      err.fail("unknown key '" + key + "'");
    }
  }
  if (fx.id.empty()) throw FormatError(source + ": missing id");
  if (fx.scheme.empty()) throw FormatError(source + ": missing scheme");
  if (fx.pair_file.empty()) throw FormatError(source + ": missing pair");
  if (fx.k == 0 || fx.g == 0) throw FormatError(source + ": k and g are required");
  return fx;
}

Fixture load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open fixture " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str(), path.filename().string());
}

std::vector<Fixture> load_fixture_dir(const std::filesystem::path& dir) {
  const auto tables = dir / "tables";
  if (!std::filesystem::is_directory(tables)) throw FormatError("no fixture tables under " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(tables)) {
    if (e.is_regular_file() && e.path().extension() == ".fix") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Fixture> out;
  for (const auto& f : files) out.push_back(load_fixture(f));
  return out;
}

std::string coalition_label(const Coalition& c) {
  std::string s;
  for (std::size_t p : c) s += (s.empty() ? "P" : "+P") + std::to_string(p + 1);
  return s;
}

namespace {

// Level matrices, share layout and reconstruction for one fixture.
class Replayer {
 public:
  Replayer(const Fixture& fx, const std::filesystem::path& dir) : fx_(fx) {
    base_ = load_pair(dir / "pairs" / fx.pair_file, fx.k);
    const std::size_t n = fx.n ? fx.n : base_.n;
    if (!kDirectKinds.count(fx.scheme)) {
      SchemeSpec spec;
      spec.kind = parse_scheme_kind(fx.scheme);
      spec.k = fx.k;
      spec.n = n;
      spec.g = fx.g;
      spec.base = base_;
      spec.method = fx.method;
      spec.subset_order = fx.subsets;
      scheme_.emplace(spec);
      for (std::size_t q = 0; q < fx.g; ++q) levels_.push_back(scheme_->level_matrix(q));
      if (scheme_->aux_matrices()) aux_ = *scheme_->aux_matrices();
      runs_ = scheme_->runs();
      width_ = scheme_->contrast_width();
    } else if (fx.scheme == "hutzeng-direct") {
      aux_ = schemeC_build_matrices(base_, fx.g, n, fx.subsets);
      levels_ = aux_->L;
      runs_ = 1;
      width_ = aux_->m_g;
    } else {
      const GreyFamily fam = build_grey_family(base_, fx.g);
      levels_ = fam.levels;
      runs_ = fam.m_g;
      width_ = fx.scheme == "cimato-direct" ? 1 : fam.m_g;
    }
  }

  bool native() const { return scheme_.has_value(); }
  std::size_t contrast_width() const { return width_; }
  const std::vector<BoolMatrix>& levels() const { return levels_; }
  const std::optional<AuxMatrices>& aux() const { return aux_; }

  // Applies the pinned draw. Direct kinds accept a bare chosen matrix if it
  // is a column permutation of the level matrix.
  BoolMatrix choose(const FixtureLevel& lv, std::vector<std::string>& problems) const {
    const BoolMatrix& base = levels_.at(lv.level);
    if (native()) {
      const Draw d = lv.perm ? *lv.perm : scheme_->identity_draw();
      return scheme_->permuted_matrix(lv.level, d);
    }
    if (lv.perm) {
      if (lv.perm->size() != 1) throw ParameterError("direct extensions permute all columns as one block");
      return permute_columns(base, lv.perm->front());
    }
    if (lv.chosen) {
      if (!is_column_permutation_of(*lv.chosen, base)) {
        problems.push_back("level " + std::to_string(lv.level) +
                           " chosen matrix is not a column permutation of the level matrix");
      }
      return *lv.chosen;
    }
    return base;
  }

  PixelShares distribute(const FixtureLevel& lv, const BoolMatrix& chosen) const {
    if (native()) return scheme_->distribute(lv.level, lv.perm ? *lv.perm : scheme_->identity_draw());
    PixelShares out;
    out.level = lv.level;
    out.runs = runs_;
    out.blocks.resize(chosen.rows());
    for (std::size_t i = 0; i < chosen.rows(); ++i) {
      auto& mine = out.blocks[i];
      if (fx_.scheme == "cimato-direct") {
        for (std::size_t r = 0; r < runs_; ++r) mine.emplace_back(1, chosen(i, r));
      } else if (fx_.scheme == "yang-direct") {
        mine.push_back(chosen.row(i));
        for (std::size_t r = 1; r < runs_; ++r) mine.push_back(gamma_shift(mine.back(), chosen.cols()));
      } else {
        mine.push_back(chosen.row(i));
        out.aux.push_back(aux_->GA.row(i));
      }
    }
    return out;
  }

  BoolVector reconstruct(const PixelShares& s, const Coalition& c) const {
    CopyMachine cm;
    if (native()) return scheme_->reconstruct(s, c, cm);
    std::vector<std::vector<BoolVector>> runs;
    std::vector<BoolVector> first, aux;
    for (std::size_t p : c) {
      runs.push_back(s.blocks.at(p));
      first.push_back(s.blocks.at(p).at(0));
      if (!s.aux.empty()) aux.push_back(s.aux.at(p));
    }
    if (fx_.scheme == "cimato-direct") return schemeA_reconstruct(runs, runs_, cm);
    if (fx_.scheme == "yang-direct") return schemeB_reconstruct(runs, runs_, fx_.complement, cm);
    return schemeC_reconstruct(first, aux, cm);
  }

 private:
  const Fixture& fx_;
  BasisPair base_;
  std::optional<Scheme> scheme_;
  std::vector<BoolMatrix> levels_;
  std::optional<AuxMatrices> aux_;
  std::size_t runs_ = 0;
  std::size_t width_ = 0;
};

class Checker {
 public:
  explicit Checker(FixtureOutcome& out) : out_(out) {}

  void cell(const std::string& label, const FixtureCell& c, const BoolVector& actual) {
    ++out_.cells_checked;
    const std::string got = actual.str();
    if (got != c.expected()) {
      fail(label + ": expected " + c.expected() + ", got " + got + " (" + first_difference(c.expected(), got) + ")");
      return;
    }
    if (c.replayed) {
      if (c.printed == got) {
        fail(label + ": marked as an erratum but the printed value " + c.printed + " matches the replay");
      } else {
        out_.errata.push_back(label + ": printed " + c.printed + ", replay gives " + got + " (" +
                              first_difference(c.printed, got) + ")");
      }
    }
  }

  void matrix(const std::string& label, const BoolMatrix& expected, const BoolMatrix& actual) {
    ++out_.cells_checked;
    if (expected == actual) return;
    if (expected.rows() != actual.rows() || expected.cols() != actual.cols()) {
      fail(label + ": expected " + std::to_string(expected.rows()) + "x" + std::to_string(expected.cols()) +
           ", got " + std::to_string(actual.rows()) + "x" + std::to_string(actual.cols()));
      return;
    }
    for (std::size_t r = 0; r < expected.rows(); ++r) {
      const std::string e = expected.row(r).str();
      const std::string a = actual.row(r).str();
      if (e != a) {
        fail(label + " row " + std::to_string(r + 1) + ": expected " + e + ", got " + a + " (" +
             first_difference(e, a) + ")");
        return;
      }
    }
  }

  void fail(const std::string& msg) {
    out_.passed = false;
    out_.mismatches.push_back(msg);
  }

 private:
  FixtureOutcome& out_;
};

std::string alphas_str(const std::vector<Rational>& a) {
  std::string s;
  for (const auto& r : a) s += (s.empty() ? "" : " ") + to_string(r);
  return s;
}

}  // namespace

FixtureOutcome replay_fixture(const Fixture& fx, const std::filesystem::path& fixture_dir) {
  FixtureOutcome out;
  out.id = fx.id;
  out.anchor = fx.anchor;
  Checker check(out);
  std::optional<Replayer> rp;
  try {
    rp.emplace(fx, fixture_dir);
  } catch (const std::exception& e) {
    check.fail(std::string("setup failed: ") + e.what());
    return out;
  }

  for (const auto& [name, m] : fx.matrices) {
    const BoolMatrix* actual = nullptr;
    const bool aux_kind = rp->aux().has_value();
    if (name == "GA" && aux_kind) {
      actual = &rp->aux()->GA;
    } else if (name.size() >= 2 && ((name[0] == 'G' && !aux_kind) || (name[0] == 'L' && aux_kind))) {
      std::size_t q = 0;
      auto [p, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), q);
      if (ec == std::errc() && p == name.data() + name.size() && q < rp->levels().size()) actual = &rp->levels()[q];
    }
    if (!actual) {
      check.fail("matrix " + name + " does not exist for scheme " + fx.scheme);
      continue;
    }
    check.matrix("matrix " + name, m, *actual);
  }

  // Replayed results, for contrasts and failure checks.
  std::map<Coalition, std::map<std::size_t, BoolVector>> results;
  for (const auto& lv : fx.levels) {
    const std::string lvl = "level " + std::to_string(lv.level);
    if (lv.level >= fx.g) {
      check.fail(lvl + ": out of range for g=" + std::to_string(fx.g));
      continue;
    }
    try {
      std::vector<std::string> problems;
      const BoolMatrix chosen = rp->choose(lv, problems);
      for (const auto& p : problems) check.fail(p);
      if (lv.chosen) check.matrix(lvl + " chosen", *lv.chosen, chosen);
      const PixelShares s = rp->distribute(lv, chosen);

      for (const auto& [p, cells] : lv.shares) {
        if (p >= s.blocks.size() || cells.size() != s.blocks[p].size()) {
          check.fail(lvl + " share P" + std::to_string(p + 1) + ": expected " + std::to_string(cells.size()) +
                     " runs, replay has " + std::to_string(p < s.blocks.size() ? s.blocks[p].size() : 0));
          continue;
        }
        for (std::size_t r = 0; r < cells.size(); ++r) {
          check.cell(lvl + " share P" + std::to_string(p + 1) + " run " + std::to_string(r + 1), cells[r],
                     s.blocks[p][r]);
        }
      }
      for (const auto& [p, c] : lv.aux) {
        if (p >= s.aux.size()) {
          check.fail(lvl + " aux P" + std::to_string(p + 1) + ": replay has no auxiliary share");
          continue;
        }
        check.cell(lvl + " aux P" + std::to_string(p + 1), c, s.aux[p]);
      }
      for (const auto& [c, cells] : lv.stacks) {
        const std::string label = lvl + " " + coalition_label(c);
        if (cells.size() != s.runs) {
          check.fail(label + ": expected " + std::to_string(cells.size()) + " run stacks, replay has " +
                     std::to_string(s.runs));
          continue;
        }
        for (std::size_t r = 0; r < cells.size(); ++r) {
          std::vector<BoolVector> sheets;
          for (std::size_t p : c) sheets.push_back(s.blocks.at(p).at(r));
          CopyMachine cm;
          check.cell(label + " T_" + std::to_string(r + 1), cells[r], cm.stack(sheets));
        }
      }
      for (const auto& [c, cell] : lv.xors) {
        BoolVector t = s.blocks.at(c.front()).at(0);
        for (std::size_t i = 1; i < c.size(); ++i) t = xor_vec(t, s.blocks.at(c[i]).at(0));
        check.cell(lvl + " " + coalition_label(c) + " T", cell, t);
      }
      for (const auto& [c, cell] : lv.ors) {
        if (s.aux.empty()) {
          check.fail(lvl + " " + coalition_label(c) + " A: replay has no auxiliary shares");
          continue;
        }
        BoolVector a = s.aux.at(c.front());
        for (std::size_t i = 1; i < c.size(); ++i) a = or_vec(a, s.aux.at(c[i]));
        check.cell(lvl + " " + coalition_label(c) + " A", cell, a);
      }
      for (const auto& [c, cell] : lv.results) {
        const BoolVector u = rp->reconstruct(s, c);
        results[c][lv.level] = u;
        check.cell(lvl + " " + coalition_label(c) + " P", cell, u);
      }
    } catch (const std::exception& e) {
      check.fail(lvl + ": replay error: " + e.what());
    }
  }

  const auto width = static_cast<long long>(rp->contrast_width());
  for (const auto& [c, per_level] : results) {
    if (per_level.size() != fx.g) continue;
    FixtureContrast m;
    m.coalition = c;
    for (std::size_t q = 0; q + 1 < fx.g; ++q) {
      const auto lo = static_cast<long long>(hamming(per_level.at(q)));
      const auto hi = static_cast<long long>(hamming(per_level.at(q + 1)));
      m.alphas.emplace_back(hi - lo, width);
    }
    out.measured.push_back(std::move(m));
  }
  for (const auto& want : fx.contrasts) {
    ++out.cells_checked;
    const auto it = std::find_if(out.measured.begin(), out.measured.end(),
                                 [&](const FixtureContrast& m) { return m.coalition == want.coalition; });
    const std::string label = "contrast " + coalition_label(want.coalition);
    if (it == out.measured.end()) {
      check.fail(label + ": fixture lacks results at every level");
    } else if (it->alphas != want.alphas) {
      check.fail(label + ": expected " + alphas_str(want.alphas) + ", replay gives " + alphas_str(it->alphas));
    } else {
      out.notes.push_back(label + ": " + alphas_str(it->alphas));
    }
  }

  for (const auto& f : fx.failures) {
    ++out.cells_checked;
    if (f.kind == FixtureFailure::Kind::Collide) {
      const std::string label = "levels " + std::to_string(f.a) + " and " + std::to_string(f.b);
      std::size_t compared = 0;
      bool all_equal = true;
      for (const auto& [c, per_level] : results) {
        if (!per_level.count(f.a) || !per_level.count(f.b)) continue;
        ++compared;
        all_equal = all_equal && per_level.at(f.a) == per_level.at(f.b);
      }
      if (compared == 0 || !all_equal) {
        check.fail(label + ": expected to collide for every coalition, but they are distinguished");
      } else {
        out.notes.push_back(label + " reconstruct identically for all " + std::to_string(compared) + " coalitions");
      }
    } else {
      std::set<Rational> distinct;
      for (const auto& m : out.measured) distinct.insert(m.alphas.begin(), m.alphas.end());
      if (distinct.size() < 2) {
        check.fail("expected uneven contrasts, but every coalition sees the same value");
      } else {
        std::string all;
        for (const auto& m : out.measured) all += " " + coalition_label(m.coalition) + "=(" + alphas_str(m.alphas) + ")";
        out.notes.push_back("contrast depends on the coalition:" + all);
      }
    }
  }
  return out;
}

}  // namespace greyvc
