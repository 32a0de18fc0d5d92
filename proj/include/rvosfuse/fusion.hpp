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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rvosfuse/candidates.hpp"
#include "rvosfuse/mask.hpp"
#include "rvosfuse/track.hpp"

namespace rvosfuse {

enum class FusionMode {
  kPerFrame,      // conditional fusion decided independently on every frame
  kPerVideo,      // one decision for the whole track from summed areas
  kRefinedOnly,
  kDetectorOnly,
  kAlwaysUnion,
};

std::string to_string(FusionMode mode);

/// Accepts per_frame, per_video, refined_only, detector_only, always_union.
FusionMode parse_fusion_mode(std::string_view name);

inline constexpr double kDefaultSigma = 0.275;
inline constexpr double kDefaultAreaRatio = 2.0 / 3.0;

struct FusionConfig {
  double sigma = kDefaultSigma;
  double area_ratio = kDefaultAreaRatio;
  FusionMode mode = FusionMode::kPerFrame;
  // Prompt ties always go to the earliest frame; kept for config echo.
  static constexpr const char* kTieBreak = "earliest_frame";

  /// Throws ParameterError unless sigma is in [0,1] and area_ratio > 0.
  void validate() const;
};

struct CombinedFrame {
  BinaryMask mask;
  double score = 0.0;
};

/// Union of the best-scoring candidate and every candidate scoring strictly
/// above sigma; the combined score is the best candidate score. An empty
/// set yields an empty width x height mask with score 0.
CombinedFrame combine_candidates(const ScoredCandidateSet& frame, double sigma, int width,
                                 int height);

struct CombinedTrack {
  MaskTrack track;
  std::vector<double> scores;
};

CombinedTrack combine_track(const CandidateTrack& candidates, double sigma);

struct PromptSelection {
  std::size_t frame_index = 0;
  BinaryMask mask;
  double score = 0.0;
};

/// Frame with the highest combined score; ties go to the earliest frame.
/// Throws EmptyTrackError for a zero-length track and ShapeError when the
/// score list length differs from the frame count.
PromptSelection select_prompt(const MaskTrack& detector_track, std::span<const double> scores);

/// area(refined) < ratio * area(detector), strict.
bool cmf_condition(std::size_t refined_area, std::size_t detector_area, double area_ratio);

/// Conditional mask fusion for one frame: the union when the refined mask is
/// small relative to the detector mask, the refined mask otherwise.
BinaryMask cmf_frame(const BinaryMask& refined, const BinaryMask& detector, double area_ratio);

/// Applies `config.mode` across a whole track. Output ids follow `refined`.
MaskTrack cmf_track(const MaskTrack& refined, const MaskTrack& detector,
                    const FusionConfig& config);

}  // namespace rvosfuse
