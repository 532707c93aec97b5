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

// Side-by-side comparison of the four codecs: instrumented measurements
// next to the published closed-form figures.

#ifndef GREYVC_REPORT_HPP_
#define GREYVC_REPORT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "greyvc/basis.hpp"
#include "greyvc/copy_machine.hpp"
#include "greyvc/schemes.hpp"

namespace greyvc {

struct ReportMetric {
  std::string name;
  std::string measured;
  std::string reported_formula;
  std::string reported_value;  // formula evaluated at (k, n, g, m)
  bool agrees = true;
  std::optional<std::size_t> footnote;  // index into SchemeReport::footnotes
};

struct SchemeColumn {
  SchemeKind kind = SchemeKind::Baseline;
  std::string label;
  bool available = false;
  std::string unavailable_reason;
  std::size_t m = 0;
  OpCounts ops;  // one pixel, first k participants
  std::size_t shares_held = 0;
  std::size_t runs = 0;
  Rational contrast;
  bool contrast_exhaustive = false;
  std::size_t pixel_expansion = 0;
  std::size_t aspect_ratio = 0;
  std::size_t storage = 0;  // bits per participant per secret pixel
  bool stack_compatible = false;
  std::vector<ReportMetric> metrics;
};

struct SchemeReport {
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t g = 0;
  std::vector<SchemeColumn> columns;    // baseline, A, B, C at g
  std::vector<SchemeColumn> binary;     // A, B, C at g = 2
  std::vector<std::string> footnotes;
};

// Builds every scheme at (k, n, g) on its default basis.
SchemeReport comparison_report(std::size_t k, std::size_t n, std::size_t g);

std::string report_text(const SchemeReport& r);
nlohmann::json report_json(const SchemeReport& r);

}  // namespace greyvc

#endif  // GREYVC_REPORT_HPP_
