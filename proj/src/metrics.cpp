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

#include "rvosfuse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "rvosfuse/errors.hpp"
#include "rvosfuse/parallel.hpp"

namespace rvosfuse {

double region_similarity_j(const BinaryMask& pred, const BinaryMask& gt) { return iou(pred, gt); }

int tolerance_radius(int width, int height, double tolerance_frac) {
  if (!(tolerance_frac >= 0.0) || !std::isfinite(tolerance_frac)) {
    throw ParameterError("tolerance fraction must be a non-negative number");
  }
  const double diagonal = std::sqrt(static_cast<double>(width) * width +
                                    static_cast<double>(height) * height);
  return static_cast<int>(std::ceil(tolerance_frac * diagonal));
}

double boundary_f_at_radius(const BinaryMask& pred, const BinaryMask& gt, int radius) {
  require_same_shape(pred, gt);
  const BinaryMask pred_edge = boundary_pixels(pred);
  const BinaryMask gt_edge = boundary_pixels(gt);
  const std::size_t n_pred = area(pred_edge);
  const std::size_t n_gt = area(gt_edge);
  if (n_pred == 0 && n_gt == 0) return 1.0;
  if (n_pred == 0 || n_gt == 0) return 0.0;

  const std::size_t pred_hits = intersection_area(pred_edge, dilate(gt_edge, radius));
  const std::size_t gt_hits = intersection_area(gt_edge, dilate(pred_edge, radius));
  const double precision = static_cast<double>(pred_hits) / static_cast<double>(n_pred);
  const double recall = static_cast<double>(gt_hits) / static_cast<double>(n_gt);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double boundary_f(const BinaryMask& pred, const BinaryMask& gt, double tolerance_frac) {
  require_same_shape(pred, gt);
  return boundary_f_at_radius(pred, gt, tolerance_radius(gt.width(), gt.height(), tolerance_frac));
}

EvalRecord eval_track(const MaskTrack& pred, const MaskTrack& gt, double tolerance_frac) {
  try {
    require_compatible(pred, gt);
  } catch (const ShapeError& e) {
    throw ShapeError("video '" + gt.video_id + "', expression '" + gt.expression_id +
                     "': " + e.what());
  }
  EvalRecord rec;
  rec.video_id = gt.video_id;
  rec.expression_id = gt.expression_id;
  const std::size_t n = gt.frames.size();
  rec.per_frame_j.reserve(n);
  rec.per_frame_f.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    rec.per_frame_j.push_back(region_similarity_j(pred.frames[t], gt.frames[t]));
    rec.per_frame_f.push_back(boundary_f(pred.frames[t], gt.frames[t], tolerance_frac));
  }
  if (n > 0) {
    double sj = 0.0;
    double sf = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      sj += rec.per_frame_j[t];
      sf += rec.per_frame_f[t];
    }
    rec.mean_j = sj / static_cast<double>(n);
    rec.mean_f = sf / static_cast<double>(n);
  }
  rec.jf = (rec.mean_j + rec.mean_f) / 2.0;
  return rec;
}

EvalReport aggregate_records(std::vector<EvalRecord> records, const EvalSettings& settings) {
  std::sort(records.begin(), records.end(), [](const EvalRecord& a, const EvalRecord& b) {
    return std::tie(a.video_id, a.expression_id) < std::tie(b.video_id, b.expression_id);
  });
  EvalReport report;
  report.settings = settings;
  if (!records.empty()) {
    double sj = 0.0;
    double sf = 0.0;
    for (const auto& r : records) {
      sj += r.mean_j;
      sf += r.mean_f;
    }
    report.corpus_j = sj / static_cast<double>(records.size());
    report.corpus_f = sf / static_cast<double>(records.size());
    report.corpus_jf = (report.corpus_j + report.corpus_f) / 2.0;
  }
  report.records = std::move(records);
  return report;
}

EvalReport eval_corpus(const Manifest& manifest, const std::filesystem::path& predictions_root,
                       const EvalSettings& settings, int jobs) {
  if (!manifest.has_ground_truth()) {
    throw ValidationError("manifest lacks ground truth for at least one expression");
  }
  (void)tolerance_radius(1, 1, settings.tolerance_frac);
  const auto keys = manifest.keys();
  std::vector<std::optional<EvalRecord>> slots(keys.size());
  parallel_for(keys.size(), jobs, [&](std::size_t i) {
    const auto& key = keys[i];
    const VideoEntry& video = manifest.video(key.video_id);
    const MaskTrack gt = load_ground_truth(manifest, key);
    const MaskTrack pred = read_track(predictions_root, key.video_id, key.expression_id,
                                      video.frame_count, video.width, video.height);
    slots[i] = eval_track(pred, gt, settings.tolerance_frac);
  });
  std::vector<EvalRecord> records;
  records.reserve(slots.size());
  for (auto& s : slots) records.push_back(std::move(*s));
  EvalReport report = aggregate_records(std::move(records), settings);
  report.corpus_metadata_json = manifest.metadata_json;
  return report;
}

}  // namespace rvosfuse
