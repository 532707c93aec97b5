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

// Golden fixture files and their replay.
//
// A fixture is a line-oriented text file. Blank lines and '#' comments are
// ignored. Header keys:
//
//   id <name>            anchor <free text>
//   scheme <kind>        baseline | A | B | C | cimato-direct |
//                        yang-direct | hutzeng-direct
//   pair <file>          basis pair, relative to the pairs directory
//   k <k>  n <n>  g <g>  (n defaults to the pair's row count)
//   method <m>           full | locked | within
//   subsets <s> ...      scheme C block order, e.g. "12 13 23"
//   complement yes|no    yang-direct only
//   matrix <name> <rows> G<q>, L<q> or GA; rows joined by ';'
//   contrast <pp> <alpha> ...   adjacent-level contrasts for a coalition
//   failure collide <a> <b> | failure uneven-contrast
//
// "level <q>" opens a section for grey level q (0-based) holding:
//
//   perm <block> ...     one comma-separated permutation per block
//   chosen <rows>        the permuted level matrix
//   share <p> <run> ...  aux <p> <bits>
//   stack <pp> <T_1> ... xor <pp> <bits>  or <pp> <bits>  result <pp> <bits>
//
// Participants are 1-based digits, so "23" is participants 2 and 3. Bits
// may contain '_' separators. A cell written "printed!replayed" marks a
// printed value known to be wrong; replay must match the second half and
// must differ from the first.

#ifndef GREYVC_FIXTURES_HPP_
#define GREYVC_FIXTURES_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "greyvc/basis.hpp"
#include "greyvc/boolmat.hpp"
#include "greyvc/schemes.hpp"

namespace greyvc {

struct FixtureCell {
  std::string printed;
  std::optional<std::string> replayed;  // set for errata

  const std::string& expected() const { return replayed ? *replayed : printed; }
};

using Coalition = std::vector<std::size_t>;  // 0-based, ascending

struct FixtureLevel {
  std::size_t level = 0;
  std::optional<Draw> perm;
  std::optional<BoolMatrix> chosen;
  std::map<std::size_t, std::vector<FixtureCell>> shares;
  std::map<std::size_t, FixtureCell> aux;
  std::map<Coalition, std::vector<FixtureCell>> stacks;
  std::map<Coalition, FixtureCell> xors;
  std::map<Coalition, FixtureCell> ors;
  std::map<Coalition, FixtureCell> results;
};

struct FixtureContrast {
  Coalition coalition;
  std::vector<Rational> alphas;
};

struct FixtureFailure {
  enum class Kind { Collide, UnevenContrast };
  Kind kind = Kind::Collide;
  std::size_t a = 0;
  std::size_t b = 0;
};

struct Fixture {
  std::string id;
  std::string anchor;
  std::string source;
  std::string scheme;
  std::string pair_file;
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t g = 0;
  PermutationMethod method = PermutationMethod::WithinBlock;
  std::vector<Subset> subsets;
  bool complement = false;
  std::vector<std::pair<std::string, BoolMatrix>> matrices;
  std::vector<FixtureContrast> contrasts;
  std::vector<FixtureFailure> failures;
  std::vector<FixtureLevel> levels;
};

// Throws FormatError with "source:line: ..." on malformed input.
Fixture parse_fixture(std::string_view text, const std::string& source = "<fixture>");
Fixture load_fixture(const std::filesystem::path& path);
// Every *.fix file under dir/tables, sorted by file name.
std::vector<Fixture> load_fixture_dir(const std::filesystem::path& dir);

std::string coalition_label(const Coalition& c);  // "P1+P3"

struct FixtureOutcome {
  std::string id;
  std::string anchor;
  bool passed = true;
  std::size_t cells_checked = 0;
  std::vector<std::string> mismatches;  // each names the first differing bit
  std::vector<std::string> errata;
  std::vector<std::string> notes;
  std::vector<FixtureContrast> measured;  // per coalition with a full set of results
};

// Replays the fixture's distribution with its pinned permutations and
// compares every transcribed cell bit for bit. `fixture_dir` holds pairs/.
FixtureOutcome replay_fixture(const Fixture& fx, const std::filesystem::path& fixture_dir);

}  // namespace greyvc

#endif  // GREYVC_FIXTURES_HPP_
