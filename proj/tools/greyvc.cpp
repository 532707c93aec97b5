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

// greyvc: share, reconstruct, verify and report from the command line.
//
// Exit status: 0 success, 1 I/O or verification failure, 2 bad usage or
// parameters.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "greyvc/basis.hpp"
#include "greyvc/errors.hpp"
#include "greyvc/netpbm.hpp"
#include "greyvc/pipeline.hpp"
#include "greyvc/report.hpp"
#include "greyvc/schemes.hpp"
#include "greyvc/verify.hpp"

namespace fs = std::filesystem;
using namespace greyvc;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string scheme = "A";
  std::size_t k = 2;
  std::size_t n = 3;
  std::size_t g = 3;
  std::uint64_t seed = 0;
  std::string method = "within";
  std::string basis;
  std::string participants;
  bool stack_only = false;
  bool ascii_pbm = false;
  std::string format = "text";
  std::string only;
  std::string fixtures = GREYVC_FIXTURE_DIR;
  unsigned threads = 1;
  std::string input;
  std::string output;
};

PermutationMethod parse_method(const std::string& s) {
  if (s == "full") return PermutationMethod::Full;
  if (s == "locked") return PermutationMethod::Locked;
  if (s == "within") return PermutationMethod::WithinBlock;
  throw ParameterError("unknown permutation method '" + s + "' (full, locked, within)");
}

// "1,3" -> {0, 2}
std::vector<std::size_t> parse_participants(const std::string& text, std::size_t n) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || item.empty() || v == 0 || v > n) {
      throw ParameterError("participant '" + item + "' must be a number in 1.." + std::to_string(n));
    }
    out.push_back(v - 1);
  }
  return out;
}

int cmd_share(const Options& o) {
  SchemeSpec spec;
  spec.kind = parse_scheme_kind(o.scheme);
  spec.k = o.k;
  spec.n = o.n;
  spec.g = o.g;
  spec.seed = o.seed;
  spec.method = parse_method(o.method);
  if (o.g < 2 || o.g > 256) throw ParameterError("g must be in 2..256 (got " + std::to_string(o.g) + ")");
  if (o.basis.empty()) {
    spec.base = default_basis(spec.kind, o.k, o.n);
  } else {
    try {
      spec.base = load_pair(o.basis, o.k);
    } catch (const FormatError& e) {
      throw ParameterError(e.what());
    }
  }
  const Scheme scheme(spec);
  const Gray8Image secret = read_pgm(o.input);
  const GreyImage levels = quantize(secret, o.g);
  const ShareBundle bundle = encode_image(levels, scheme, o.threads);
  write_bundle(bundle, o.output, o.ascii_pbm);
  std::cout << "wrote " << bundle.shares.size() << " share files and manifest.json to " << o.output << " ("
            << scheme.runs() << " run(s) of " << scheme.block_length() << " bits per pixel, "
            << scheme.shares_held() << " transparencies per participant)\n";
  return 0;
}

int cmd_reconstruct(const Options& o) {
  const fs::path dir = o.input;
  const Manifest manifest = read_manifest(dir);
  const Scheme scheme = scheme_from_manifest(manifest);
  std::vector<std::size_t> who;
  if (o.participants.empty()) {
    for (std::size_t i = 0; i < manifest.k; ++i) who.push_back(i);
  } else {
    who = parse_participants(o.participants, manifest.n);
  }
  if (who.size() < manifest.k) {
    throw ParameterError("need at least k=" + std::to_string(manifest.k) + " participants, got " +
                         std::to_string(who.size()));
  }
  const auto shares = load_shares(dir, manifest, who);
  const DecodeResult dec =
      decode_image(scheme, manifest.width, manifest.height, shares, who, o.stack_only, o.threads);
  const fs::path out_pgm = o.output.empty() ? dir / "reconstructed.pgm" : fs::path(o.output);
  fs::path out_pbm = out_pgm;
  out_pbm.replace_extension(".pbm");
  write_pgm(out_pgm, render_levels(dec.levels), false);
  write_pbm(out_pbm, dec.raster, o.ascii_pbm);
  std::cout << "wrote " << out_pgm.string() << " and " << out_pbm.string() << "\n";
  for (const auto& c : measure_decode_contrast(scheme, dec.levels, dec, who)) {
    std::cout << "contrast level " << c.level << "->" << c.level + 1 << ": " << to_string(c.alpha)
              << " (max weight " << c.max_weight_low << ", min weight " << c.min_weight_high << ")\n";
  }
  return 0;
}

bool run_security(std::ostream& out) {
  bool ok = true;
  for (SchemeKind kind : {SchemeKind::Baseline, SchemeKind::A, SchemeKind::B, SchemeKind::C}) {
    SchemeSpec spec;
    spec.kind = kind;
    spec.k = 2;
    spec.n = 3;
    spec.g = 3;
    spec.base = default_basis(kind, 2, 3);
    const SecurityReport r = security_oracle(Scheme(spec), 1);
    out << "security " << to_string(kind) << " (2,3) g=3 within-block, t=1: " << to_string(r.status) << " ("
        << r.draws_per_level << " draws per level)\n";
    ok = ok && r.status == OracleStatus::Pass;
  }
  return ok;
}

bool run_leakage(std::ostream& out) {
  bool ok = true;
  for (SchemeKind kind : {SchemeKind::Baseline, SchemeKind::A}) {
    SchemeSpec spec;
    spec.kind = kind;
    spec.k = 2;
    spec.n = 3;
    spec.g = 3;
    spec.base = default_basis(kind, 2, 3);
    spec.method = PermutationMethod::Locked;
    const SecurityReport r = security_oracle(Scheme(spec), 1);
    out << "leakage " << to_string(kind) << " (2,3) g=3 locked permutation, t=1: " << to_string(r.status)
        << " (expected fail)\n";
    for (const auto& d : r.details) out << "  " << d << "\n";
    ok = ok && r.status == OracleStatus::Fail;
  }
  return ok;
}

bool run_method1(std::ostream& out) {
  const Method1Report r = method1_failure_oracle();
  for (const auto& row : r.rows) {
    out << "method1 grey " << row.level + 1 << " (q=" << row.level << "), " << row.samples
        << " reconstructions: P(00)=" << to_string(row.p00) << " P(01|10)=" << to_string(row.p_mixed)
        << " P(11)=" << to_string(row.p11) << "\n";
  }
  out << "method1: " << (r.matches_expected ? "pass" : "fail") << "\n";
  return r.matches_expected;
}

bool run_contrast(std::ostream& out) {
  bool ok = true;
  const std::size_t kn[][2] = {{2, 2}, {2, 3}, {3, 3}};
  for (const auto& p : kn) {
    for (std::size_t g = 2; g <= 4; ++g) {
      for (SchemeKind kind : {SchemeKind::A, SchemeKind::B, SchemeKind::C}) {
        SchemeSpec spec;
        spec.kind = kind;
        spec.k = p[0];
        spec.n = p[1];
        spec.g = g;
        spec.base = default_basis(kind, p[0], p[1]);
        const WorstCaseContrast wc = measure_worst_case_contrast(Scheme(spec));
        const bool good =
            std::all_of(wc.alphas.begin(), wc.alphas.end(), [&](const Rational& a) { return a == Rational(1, static_cast<long long>(g - 1)); });
        out << "contrast " << to_string(kind) << " (" << p[0] << "," << p[1] << ") g=" << g << ": "
            << to_string(wc.min_alpha) << (wc.exhaustive ? "" : " (identity draw)") << (good ? "" : "  FAIL") << "\n";
        ok = ok && good;
      }
    }
  }
  return ok;
}

int cmd_verify(const Options& o) {
  const std::string& only = o.only;
  bool ok = true;
  bool ran = false;
  const bool is_oracle = only == "method1" || only == "leakage" || only == "security" || only == "contrast";
  auto wants = [&](const std::string& name) { return only.empty() || only == name; };

  if (!is_oracle) {
    const GoldenSuiteResult g = run_golden_suite(o.fixtures, only == "golden" ? "" : only);
    for (const auto& f : g.outcomes) {
      ran = true;
      std::cout << "fixture " << f.id << ": " << (f.passed ? "pass" : "FAIL") << " (" << f.cells_checked
                << " cells)\n";
      for (const auto& m : f.mismatches) std::cout << "  mismatch " << f.id << ": " << m << "\n";
      for (const auto& e : f.errata) std::cout << "  erratum: " << e << "\n";
      for (const auto& n : f.notes) std::cout << "  " << n << "\n";
    }
    ok = ok && g.passed();
  }
  if (wants("method1")) {
    ran = true;
    ok = run_method1(std::cout) && ok;
  }
  if (wants("leakage")) {
    ran = true;
    ok = run_leakage(std::cout) && ok;
  }
  if (wants("security")) {
    ran = true;
    ok = run_security(std::cout) && ok;
  }
  if (wants("contrast")) {
    ran = true;
    ok = run_contrast(std::cout) && ok;
  }
  if (!ran) throw ParameterError("--only '" + only + "' matches no fixture or oracle");
  std::cout << (ok ? "verify: all checks passed\n" : "verify: FAILED\n");
  return ok ? 0 : kExitFailure;
}

int cmd_report(const Options& o) {
  if (o.format != "text" && o.format != "json") throw ParameterError("--format must be text or json");
  if (o.g < 2) throw ParameterError("g must be at least 2");
  if (o.k < 2 || o.n < o.k) throw ParameterError("need 2 <= k <= n");
  const SchemeReport r = comparison_report(o.k, o.n, o.g);
  if (o.format == "json") {
    std::cout << report_json(r).dump(2) << "\n";
  } else {
    std::cout << report_text(r);
  }
  return 0;
}

void add_params(CLI::App* sub, Options& o, bool scheme_flags) {
  if (scheme_flags) sub->add_option("--scheme", o.scheme, "baseline, A, B or C");
  sub->add_option("-k", o.k, "threshold");
  sub->add_option("-n", o.n, "participants");
  sub->add_option("-g", o.g, "grey levels");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greyscale visual secret sharing with reversing reconstruction"};
  app.require_subcommand(1);
  Options o;

  auto* share = app.add_subcommand("share", "split a PGM image into PBM shares");
  add_params(share, o, true);
  share->add_option("--seed", o.seed, "random seed");
  share->add_option("--method", o.method, "permutation method: within, locked or full");
  share->add_option("--basis", o.basis, "basis pair file (B0 then B1)");
  share->add_option("--threads", o.threads, "worker threads");
  share->add_flag("--ascii-pbm", o.ascii_pbm, "write plain (P1) PBM");
  share->add_option("input", o.input, "secret PGM")->required();
  share->add_option("outdir", o.output, "output directory")->required();

  auto* rec = app.add_subcommand("reconstruct", "recover the image from a share directory");
  rec->add_option("--participants", o.participants, "1-based list, e.g. 1,3");
  rec->add_flag("--stack-only", o.stack_only, "plain stacking, no reversing");
  rec->add_flag("--ascii-pbm", o.ascii_pbm, "write plain (P1) PBM");
  rec->add_option("--threads", o.threads, "worker threads");
  rec->add_option("-o,--output", o.output, "output PGM (default <dir>/reconstructed.pgm)");
  rec->add_option("dir", o.input, "share directory")->required();

  auto* ver = app.add_subcommand("verify", "golden fixtures and exhaustive oracles");
  ver->add_option("--only", o.only, "fixture id, golden, method1, leakage, security or contrast");
  ver->add_option("--fixtures", o.fixtures, "fixture directory");

  auto* rep = app.add_subcommand("report", "compare the schemes against published figures");
  add_params(rep, o, false);
  rep->add_option("--format", o.format, "text or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*share) return cmd_share(o);
    if (*rec) return cmd_reconstruct(o);
    if (*ver) return cmd_verify(o);
    if (*rep) return cmd_report(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "greyvc: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "greyvc: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
