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

#include "rvosfuse/fusion.hpp"
#include "rvosfuse/manifest.hpp"
#include "rvosfuse/mask.hpp"
#include "rvosfuse/track.hpp"

namespace rvosfuse {

inline constexpr double kDefaultToleranceFrac = 0.008;

/// Region similarity J: IoU, with two empty masks scoring 1.
double region_similarity_j(const BinaryMask& pred, const BinaryMask& gt);

/// ceil(tolerance_frac * sqrt(width^2 + height^2)).
int tolerance_radius(int width, int height, double tolerance_frac);

/// Boundary F-measure with a pixel-distance tolerance of `radius`.
///
/// Precision is the fraction of predicted boundary pixels within `radius`
/// (Euclidean) of a ground-truth boundary pixel; recall is the converse.
/// Both boundaries empty gives 1, exactly one empty gives 0.
double boundary_f_at_radius(const BinaryMask& pred, const BinaryMask& gt, int radius);

/// boundary_f_at_radius with the radius derived from the image diagonal.
double boundary_f(const BinaryMask& pred, const BinaryMask& gt,
                  double tolerance_frac = kDefaultToleranceFrac);

struct EvalRecord {
  std::string video_id;
  std::string expression_id;
  std::vector<double> per_frame_j;
  std::vector<double> per_frame_f;
  double mean_j = 0.0;
  double mean_f = 0.0;
  double jf = 0.0;
};

/// Settings echoed into every report.
struct EvalSettings {
  FusionConfig fusion;
  double tolerance_frac = kDefaultToleranceFrac;
  double tau_track = 0.1;
};

struct EvalReport {
  std::vector<EvalRecord> records;
  double corpus_j = 0.0;
  double corpus_f = 0.0;
  double corpus_jf = 0.0;
  EvalSettings settings;
  /// Manifest metadata as compact JSON (e.g. generator parameters), or empty.
  std::string corpus_metadata_json;
};

/// Per-frame J and F plus track means. Throws ShapeError naming the frame on mismatch.
EvalRecord eval_track(const MaskTrack& pred, const MaskTrack& gt,
                      double tolerance_frac = kDefaultToleranceFrac);

/// Sorts records by (video_id, expression_id) and fills the unweighted corpus means.
EvalReport aggregate_records(std::vector<EvalRecord> records, const EvalSettings& settings);

/// Scores every expression of `manifest` against the tracks under
/// `predictions_root`. `jobs` > 1 evaluates expressions concurrently; the
/// report is identical for any value.
EvalReport eval_corpus(const Manifest& manifest, const std::filesystem::path& predictions_root,
                       const EvalSettings& settings, int jobs = 1);

}  // namespace rvosfuse
