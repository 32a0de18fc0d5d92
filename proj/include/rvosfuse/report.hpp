// Copyright 2026 The rvosfuse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rvosfuse/metrics.hpp"

namespace rvosfuse {

/// Settings as a flat JSON object: sigma, area_ratio, mode, tie_break,
/// tolerance_frac, tau_track.
std::string settings_to_json(const EvalSettings& settings);
/// Keys present in `text` override `base`; the result is validated.
EvalSettings settings_from_json(const std::string& text, EvalSettings base = {});

/// Machine-readable report. Records appear in (video_id, expression_id)
/// order and doubles print in shortest round-trip form, so equal reports
/// serialize to equal bytes.
std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);

void write_report(const EvalReport& report, const std::filesystem::path& path);
EvalReport read_report(const std::filesystem::path& path);

/// Scores as fractions in [0,1]; rendered as percentages.
struct TableRow {
  std::string label;
  double jf = 0.0;
  double j = 0.0;
  double f = 0.0;
};

TableRow table_row(const std::string& label, const EvalReport& report);

/// Aligned plain-text comparison table with J&F, J and F columns to two decimals.
std::string render_table(const std::vector<TableRow>& rows);

}  // namespace rvosfuse
