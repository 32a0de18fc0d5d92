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

#include "rvosfuse/report.hpp"

#include <algorithm>
#include <cstdio>

#include "json_util.hpp"
#include "rvosfuse/errors.hpp"

namespace rvosfuse {

using detail::json;

namespace {

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v * 100.0);
  return buf;
}

json settings_json(const EvalSettings& s) {
  return json{{"sigma", s.fusion.sigma},
              {"area_ratio", s.fusion.area_ratio},
              {"mode", to_string(s.fusion.mode)},
              {"tie_break", FusionConfig::kTieBreak},
              {"tolerance_frac", s.tolerance_frac},
              {"tau_track", s.tau_track}};
}

EvalSettings apply_settings(const json& j, EvalSettings base, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected a JSON object");
  detail::require_known_keys(j, {"sigma", "area_ratio", "mode", "tie_break", "tolerance_frac", "tau_track"}, where);
  if (j.contains("sigma")) base.fusion.sigma = detail::require_number(j, "sigma", where);
  if (j.contains("area_ratio")) base.fusion.area_ratio = detail::require_number(j, "area_ratio", where);
  if (j.contains("mode")) base.fusion.mode = parse_fusion_mode(detail::require_string(j, "mode", where));
  if (j.contains("tie_break") && detail::require_string(j, "tie_break", where) != FusionConfig::kTieBreak) {
    throw ValidationError(where + ": only tie_break \"" + FusionConfig::kTieBreak + "\" is supported");
  }
  if (j.contains("tolerance_frac")) base.tolerance_frac = detail::require_number(j, "tolerance_frac", where);
  if (j.contains("tau_track")) base.tau_track = detail::require_number(j, "tau_track", where);
  base.fusion.validate();
  (void)tolerance_radius(1, 1, base.tolerance_frac);
  if (!(base.tau_track >= 0.0 && base.tau_track <= 1.0)) {
    throw ParameterError(where + ": tau_track must lie in [0,1]");
  }
  return base;
}

}  // namespace

std::string settings_to_json(const EvalSettings& settings) { return settings_json(settings).dump(2) + "\n"; }

EvalSettings settings_from_json(const std::string& text, EvalSettings base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("cannot parse config: ") + e.what());
  }
  return apply_settings(doc, base, "config");
}

std::string report_to_json(const EvalReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back(json{{"video_id", r.video_id},
                           {"expression_id", r.expression_id},
                           {"mean_j", r.mean_j},
                           {"mean_f", r.mean_f},
                           {"jf", r.jf},
                           {"per_frame_j", r.per_frame_j},
                           {"per_frame_f", r.per_frame_f}});
  }
  json doc{{"format", "rvosfuse-report"},
           {"version", 1},
           {"config", settings_json(report.settings)},
           {"corpus", json{{"jf", report.corpus_jf}, {"j", report.corpus_j}, {"f", report.corpus_f}}},
           {"records", std::move(records)}};
  if (!report.corpus_metadata_json.empty()) {
    doc["corpus_metadata"] = json::parse(report.corpus_metadata_json);
  }
  return doc.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("cannot parse report: ") + e.what());
  }
  detail::check_format(doc, "rvosfuse-report", "report");
  EvalReport report;
  report.settings = apply_settings(detail::require_key(doc, "config", "report"), {}, "report config");
  const json& corpus = detail::require_key(doc, "corpus", "report");
  report.corpus_jf = detail::require_number(corpus, "jf", "report corpus");
  report.corpus_j = detail::require_number(corpus, "j", "report corpus");
  report.corpus_f = detail::require_number(corpus, "f", "report corpus");
  for (const json& r : detail::require_array(doc, "records", "report")) {
    EvalRecord rec;
    rec.video_id = detail::require_string(r, "video_id", "report record");
    rec.expression_id = detail::require_string(r, "expression_id", "report record");
    rec.mean_j = detail::require_number(r, "mean_j", "report record");
    rec.mean_f = detail::require_number(r, "mean_f", "report record");
    rec.jf = detail::require_number(r, "jf", "report record");
    rec.per_frame_j = detail::require_array(r, "per_frame_j", "report record").get<std::vector<double>>();
    rec.per_frame_f = detail::require_array(r, "per_frame_f", "report record").get<std::vector<double>>();
    report.records.push_back(std::move(rec));
  }
  if (doc.contains("corpus_metadata")) report.corpus_metadata_json = doc["corpus_metadata"].dump();
  return report;
}

void write_report(const EvalReport& report, const std::filesystem::path& path) {
  detail::write_text_file(path, report_to_json(report));
}

EvalReport read_report(const std::filesystem::path& path) {
  return report_from_json(detail::read_json_file(path).dump());
}

TableRow table_row(const std::string& label, const EvalReport& report) {
  return {label, report.corpus_jf, report.corpus_j, report.corpus_f};
}

std::string render_table(const std::vector<TableRow>& rows) {
  const std::string header_label = "Method";
  std::size_t label_width = header_label.size();
  for (const auto& r : rows) label_width = std::max(label_width, r.label.size());

  const std::vector<std::string> columns = {"J&F", "J", "F"};
  const std::size_t col_width = 6;

  auto pad_right = [](const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  auto pad_left = [](const std::string& s, std::size_t w) {
    return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
  };

  std::string out = pad_right(header_label, label_width) + " |";
  for (const auto& c : columns) out += " " + pad_left(c, col_width);
  out += "\n";
  out += std::string(label_width, '-') + "-+" + std::string(columns.size() * (col_width + 1), '-');
  out += "\n";
  for (const auto& r : rows) {
    out += pad_right(r.label, label_width) + " |";
    for (double v : {r.jf, r.j, r.f}) out += " " + pad_left(percent(v), col_width);
    out += "\n";
  }
  return out;
}

}  // namespace rvosfuse
