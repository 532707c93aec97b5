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

#include "greyvc/schemes.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "greyvc/errors.hpp"

namespace greyvc {

namespace {

std::size_t parity_of_weights(const BoolMatrix& m, std::size_t k, bool& consistent) {
  consistent = true;
  std::optional<std::size_t> parity;
  for (const auto& s : k_subsets(m.rows(), k)) {
    const std::size_t p = hamming(or_rows(m, s)) & 1u;
    if (parity && *parity != p) consistent = false;
    parity = p;
  }
  return parity.value_or(0);
}

bool is_even_odd_pair(const BasisPair& base) {
  if (base.k < 2 || base.n != base.k || base.k > 20) return false;
  const BasisPair ns = naor_shamir_kk(base.k);
  return is_column_permutation_of(base.b0, ns.b0) && is_column_permutation_of(base.b1, ns.b1);
}

std::size_t saturating_factorial(std::size_t w) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= w; ++i) {
    if (f > std::numeric_limits<std::size_t>::max() / i) return std::numeric_limits<std::size_t>::max();
    f *= i;
  }
  return f;
}

}  // namespace

std::string to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Baseline: return "baseline";
    case SchemeKind::A: return "A";
    case SchemeKind::B: return "B";
    case SchemeKind::C: return "C";
  }
  return "?";
}

SchemeKind parse_scheme_kind(std::string_view text) {
  if (text == "baseline") return SchemeKind::Baseline;
  if (text == "A" || text == "a") return SchemeKind::A;
  if (text == "B" || text == "b") return SchemeKind::B;
  if (text == "C" || text == "c") return SchemeKind::C;
  throw ParameterError("unknown scheme '" + std::string(text) + "' (expected baseline, A, B or C)");
}

std::string to_string(PermutationMethod method) {
  switch (method) {
    case PermutationMethod::Full: return "full";
    case PermutationMethod::Locked: return "locked";
    case PermutationMethod::WithinBlock: return "within-block";
  }
  return "?";
}

BasisPair default_basis(SchemeKind kind, std::size_t k, std::size_t n) {
  if (k < 2 || n < k) {
    throw ParameterError("need 2 <= k <= n (got k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
  if (kind == SchemeKind::C || k == n) return naor_shamir_kk(k);
  if (k == 2) {
    BoolMatrix b0(n, n), b1(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (kind == SchemeKind::B) {
          // Every B0 row is 10..0; B1 is the identity.
          b0.set(r, c, c == 0);
          b1.set(r, c, c == r);
        } else {
          // Every B0 row is 01..1; B1 is the complement of the identity.
          b0.set(r, c, c != 0);
          b1.set(r, c, c != r);
        }
      }
    }
    return make_pair(2, std::move(b0), std::move(b1));
  }
  throw ParameterError("no built-in basis for (k,n)=(" + std::to_string(k) + "," + std::to_string(n) +
                       "); supply a basis file");
}

AuxMatrices schemeC_build_matrices(const BasisPair& base, std::size_t g, std::size_t n, std::vector<Subset> order) {
  const std::size_t k = base.k;
  if (base.n != k) throw ParameterError("scheme C: base must have k rows");
  if (n < k) throw ParameterError("scheme C: n must be at least k");
  const auto lex = k_subsets(n, k);
  if (order.empty()) {
    order = lex;
  } else {
    std::set<Subset> given;
    for (auto s : order) {
      std::sort(s.begin(), s.end());
      given.insert(s);
    }
    if (order.size() != lex.size() || given != std::set<Subset>(lex.begin(), lex.end())) {
      throw ParameterError("scheme C: subset order must list every k-subset exactly once");
    }
  }
  const GreyFamily fam = build_grey_family(base, g);
  AuxMatrices aux;
  aux.subsets = order;
  aux.m_g = fam.m_g;
  aux.layout = BlockLayout::uniform(order.size() * (g - 1), base.m);
  const std::size_t width = aux.m_g * order.size();

  aux.GA = BoolMatrix(n, width, true);
  for (std::size_t p = 0; p < order.size(); ++p) {
    for (std::size_t member : order[p]) {
      for (std::size_t c = 0; c < aux.m_g; ++c) aux.GA.set(member, p * aux.m_g + c, false);
    }
  }
  for (std::size_t q = 0; q < g; ++q) {
    BoolMatrix L(n, width, true);
    for (std::size_t p = 0; p < order.size(); ++p) {
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t c = 0; c < aux.m_g; ++c) L.set(order[p][j], p * aux.m_g + c, fam.levels[q](j, c));
      }
    }
    aux.L.push_back(std::move(L));
  }
  return aux;
}

BoolVector baseline_reconstruct(std::span<const BoolVector> shares, CopyMachine& cm) { return cm.stack(shares); }

BoolVector schemeA_reconstruct(const std::vector<std::vector<BoolVector>>& shares, std::size_t m, CopyMachine& cm) {
  if (shares.empty()) throw ParameterError("scheme A: no shares");
  for (const auto& p : shares) {
    if (p.size() != m) {
      throw ParameterError("scheme A: expected " + std::to_string(m) + " runs, got " + std::to_string(p.size()));
    }
  }
  // P = NOT(NOT T_1 OR ... OR NOT T_m), i.e. the AND of the run stacks.
  std::optional<BoolVector> u;
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<BoolVector> run;
    for (const auto& p : shares) run.push_back(p[r]);
    const BoolVector t = cm.stack(run);
    const BoolVector not_t = cm.reverse(t);
    u = u ? cm.stack(*u, not_t) : not_t;
  }
  return cm.reverse(*u);
}

BoolVector schemeB_reconstruct(const std::vector<std::vector<BoolVector>>& shares, std::size_t m, bool complement,
                               CopyMachine& cm) {
  if (shares.empty()) throw ParameterError("scheme B: no shares");
  for (const auto& p : shares) {
    if (p.size() != m) {
      throw ParameterError("scheme B: expected " + std::to_string(m) + " runs, got " + std::to_string(p.size()));
    }
  }
  std::optional<BoolVector> u;
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<BoolVector> run;
    for (const auto& p : shares) run.push_back(p[r]);
    const BoolVector gt = cm.stack(run);
    u = u ? cm.exclusive(*u, gt) : gt;
  }
  return complement ? cm.reverse(*u) : *u;
}

BoolVector schemeC_reconstruct(std::span<const BoolVector> shares, std::span<const BoolVector> aux, CopyMachine& cm) {
  if (shares.empty()) throw ParameterError("scheme C: no shares");
  if (shares.size() != aux.size()) {
    throw ParameterError("scheme C: " + std::to_string(shares.size()) + " shares but " + std::to_string(aux.size()) +
                         " auxiliary shares");
  }
  BoolVector t = shares.front();
  for (std::size_t i = 1; i < shares.size(); ++i) t = cm.exclusive(t, shares[i]);
  const BoolVector a = cm.stack(aux);
  // (T OR A) XOR A equals NOT(NOT(T OR A) OR A) because A is covered by
  // T OR A; the latter needs two NOTs and two ORs instead of 4 and 4.
  return cm.reverse(cm.stack(cm.reverse(cm.stack(t, a)), a));
}

std::string scheme_precondition_failure(SchemeKind kind, const BasisPair& base) {
  switch (kind) {
    case SchemeKind::Baseline:
      if (base.h <= base.l) return "baseline requires a basis with contrast (h > l)";
      return {};
    case SchemeKind::A:
      if (base.h <= base.l) return "scheme A requires a basis with contrast (h > l)";
      if (!is_perfect_black(base)) return "scheme A requires perfect-black basis (l = 0)";
      return {};
    case SchemeKind::B: {
      if (base.h <= base.l) return "scheme B requires a basis with contrast (h > l)";
      bool c0 = true, c1 = true;
      const std::size_t p0 = parity_of_weights(base.b0, base.k, c0);
      const std::size_t p1 = parity_of_weights(base.b1, base.k, c1);
      if (((base.m - base.h) & 1u) == ((base.m - base.l) & 1u)) {
        return "scheme B requires (m-h) and (m-l) of opposite parity";
      }
      if (!c0 || !c1 || p0 == p1) {
        return "scheme B requires every k-row stack of B0 (and of B1) to have one weight parity";
      }
      return {};
    }
    case SchemeKind::C:
      if (!is_even_odd_pair(base)) return "scheme C requires the (k,k) even/odd-weight basis";
      return {};
  }
  return "unknown scheme";
}

Scheme::Scheme(SchemeSpec spec) : spec_(std::move(spec)) {
  const auto& s = spec_;
  if (s.g < 2) throw ParameterError("g must be at least 2 (got " + std::to_string(s.g) + ")");
  if (s.k < 2) throw ParameterError("k must be at least 2 (got " + std::to_string(s.k) + ")");
  if (s.n < s.k) throw ParameterError("n must be at least k (got n=" + std::to_string(s.n) + ")");
  if (s.base.m == 0) throw ParameterError("missing basis pair");
  if (s.base.k != s.k) throw ParameterError("basis threshold differs from k");
  if (s.kind == SchemeKind::C) {
    if (s.base.n != s.k) throw PreconditionError("scheme C requires the (k,k) even/odd-weight basis");
  } else if (s.base.n != s.n) {
    throw ParameterError("basis has " + std::to_string(s.base.n) + " rows but n=" + std::to_string(s.n));
  }
  if (const auto why = scheme_precondition_failure(s.kind, s.base); !why.empty()) throw PreconditionError(why);

  family_ = build_grey_family(s.base, s.g);
  if (s.kind == SchemeKind::C) aux_ = schemeC_build_matrices(s.base, s.g, s.n, s.subset_order);
  complement_ = s.kind == SchemeKind::B && ((s.base.m - s.base.h) & 1u) != 0;

  const BlockLayout& blocks = aux_ ? aux_->layout : family_.layout;
  perm_layout_ = s.method == PermutationMethod::Full ? BlockLayout({blocks.total()}) : blocks;
}

std::size_t Scheme::runs() const {
  switch (spec_.kind) {
    case SchemeKind::A:
    case SchemeKind::B: return m();
    default: return 1;
  }
}

std::size_t Scheme::block_length() const {
  switch (spec_.kind) {
    case SchemeKind::A: return spec_.g - 1;
    case SchemeKind::C: return aux_->m_g * aux_->subsets.size();
    default: return family_.m_g;
  }
}

std::size_t Scheme::shares_held() const { return spec_.kind == SchemeKind::C ? 2 : runs(); }

std::size_t Scheme::reconstructed_length() const { return block_length(); }

std::size_t Scheme::contrast_width() const { return aux_ ? aux_->m_g : block_length(); }

std::size_t Scheme::level_unit() const { return spec_.kind == SchemeKind::A ? 1 : m(); }

const BoolMatrix& Scheme::level_matrix(std::size_t level) const {
  if (level >= spec_.g) {
    throw ParameterError("grey level " + std::to_string(level) + " out of range for g=" + std::to_string(spec_.g));
  }
  return aux_ ? aux_->L[level] : family_.levels[level];
}

std::size_t Scheme::draw_count_per_level() const {
  const std::size_t cap = std::numeric_limits<std::size_t>::max();
  if (spec_.method == PermutationMethod::Locked) return saturating_factorial(perm_layout_.width(0));
  std::size_t total = 1;
  for (std::size_t w : perm_layout_.widths()) {
    const std::size_t f = saturating_factorial(w);
    if (f == cap || total > cap / f) return cap;
    total *= f;
  }
  return total;
}

Draw Scheme::identity_draw() const {
  Draw d;
  for (std::size_t w : perm_layout_.widths()) d.push_back(identity_permutation(w));
  return d;
}

Draw Scheme::random_draw(Rng& rng) const {
  Draw d;
  if (spec_.method == PermutationMethod::Locked) {
    const Permutation p = random_permutation(perm_layout_.width(0), rng);
    d.assign(perm_layout_.count(), p);
    return d;
  }
  for (std::size_t w : perm_layout_.widths()) d.push_back(random_permutation(w, rng));
  return d;
}

BoolMatrix Scheme::permuted_matrix(std::size_t level, const Draw& draw) const {
  if (spec_.method == PermutationMethod::Locked &&
      std::adjacent_find(draw.begin(), draw.end(), std::not_equal_to<>()) != draw.end()) {
    throw ParameterError("locked permutation draw must repeat one permutation");
  }
  return permute_within_blocks(level_matrix(level), perm_layout_, draw);
}

PixelShares Scheme::distribute(std::size_t level, const Draw& draw) const {
  const BoolMatrix s = permuted_matrix(level, draw);
  PixelShares out;
  out.level = level;
  out.runs = runs();
  out.blocks.resize(s.rows());
  const std::size_t mm = m();
  for (std::size_t i = 0; i < s.rows(); ++i) {
    auto& mine = out.blocks[i];
    switch (spec_.kind) {
      case SchemeKind::Baseline:
      case SchemeKind::C: mine.push_back(s.row(i)); break;
      case SchemeKind::A:
        for (std::size_t r = 0; r < mm; ++r) {
          BoolVector bs(spec_.g - 1);
          for (std::size_t b = 0; b + 1 < spec_.g; ++b) bs.set(b, s(i, b * mm + r));
          mine.push_back(std::move(bs));
        }
        break;
      case SchemeKind::B:
        mine.push_back(s.row(i));
        for (std::size_t r = 1; r < mm; ++r) mine.push_back(gamma_shift(mine.back(), mm));
        break;
    }
  }
  if (aux_) {
    for (std::size_t i = 0; i < s.rows(); ++i) out.aux.push_back(aux_->GA.row(i));
  }
  return out;
}

PixelShares Scheme::distribute(std::size_t level, Rng& rng) const { return distribute(level, random_draw(rng)); }

void Scheme::check_participants(std::span<const std::size_t> participants) const {
  std::vector<bool> seen(spec_.n, false);
  for (std::size_t p : participants) {
    if (p >= spec_.n) throw ParameterError("participant " + std::to_string(p + 1) + " out of range");
    if (seen[p]) throw ParameterError("participant " + std::to_string(p + 1) + " listed twice");
    seen[p] = true;
  }
  if (participants.size() < spec_.k) {
    throw ParameterError("need at least k=" + std::to_string(spec_.k) + " participants, got " +
                         std::to_string(participants.size()));
  }
}

BoolVector Scheme::reconstruct(const PixelShares& shares, std::span<const std::size_t> participants,
                               CopyMachine& cm) const {
  check_participants(participants);
  const auto chosen = participants.first(spec_.k);
  std::vector<std::vector<BoolVector>> runs_of;
  for (std::size_t p : chosen) runs_of.push_back(shares.blocks.at(p));
  switch (spec_.kind) {
    case SchemeKind::Baseline: {
      std::vector<BoolVector> first;
      for (const auto& r : runs_of) first.push_back(r.at(0));
      return baseline_reconstruct(first, cm);
    }
    case SchemeKind::A: return schemeA_reconstruct(runs_of, m(), cm);
    case SchemeKind::B: return schemeB_reconstruct(runs_of, m(), complement_, cm);
    case SchemeKind::C: {
      std::vector<BoolVector> t, a;
      for (std::size_t p : chosen) {
        t.push_back(shares.blocks.at(p).at(0));
        a.push_back(shares.aux.at(p));
      }
      return schemeC_reconstruct(t, a, cm);
    }
  }
  throw ParameterError("unknown scheme");
}

BoolVector Scheme::reconstruct(const PixelShares& shares, std::span<const std::size_t> participants) const {
  CopyMachine cm;
  return reconstruct(shares, participants, cm);
}

std::size_t Scheme::decode_level(const BoolVector& recovered, std::span<const std::size_t> participants) const {
  if (spec_.kind == SchemeKind::Baseline) {
    return nearest_level(stack_only_weights(participants.first(std::min(participants.size(), spec_.k))),
                         hamming(recovered));
  }
  const std::size_t unit = level_unit();
  const std::size_t level = (hamming(recovered) + unit / 2) / unit;
  return std::min(level, spec_.g - 1);
}

BoolVector Scheme::stack_only(const PixelShares& shares, std::span<const std::size_t> participants,
                              CopyMachine& cm) const {
  check_participants(participants);
  std::vector<BoolVector> sheets;
  for (std::size_t p : participants) {
    BoolVector all;
    for (const auto& r : shares.blocks.at(p)) all = concat(all, r);
    sheets.push_back(std::move(all));
  }
  return cm.stack(sheets);
}

std::vector<std::size_t> Scheme::stack_only_weights(std::span<const std::size_t> participants) const {
  std::vector<std::size_t> w;
  CopyMachine cm;
  for (std::size_t q = 0; q < spec_.g; ++q) w.push_back(hamming(stack_only(distribute(q, identity_draw()), participants, cm)));
  return w;
}

std::size_t Scheme::nearest_level(const std::vector<std::size_t>& weights, std::size_t weight) {
  std::size_t best = 0;
  std::size_t best_gap = std::numeric_limits<std::size_t>::max();
  for (std::size_t q = 0; q < weights.size(); ++q) {
    const std::size_t gap = weights[q] > weight ? weights[q] - weight : weight - weights[q];
    if (gap < best_gap) {
      best = q;
      best_gap = gap;
    }
  }
  return best;
}

}  // namespace greyvc
