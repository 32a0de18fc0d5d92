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

#include "rvosfuse/fusion.hpp"

#include <cmath>

#include "rvosfuse/errors.hpp"

namespace rvosfuse {

std::string to_string(FusionMode mode) {
  switch (mode) {
    case FusionMode::kPerFrame: return "per_frame";
    case FusionMode::kPerVideo: return "per_video";
    case FusionMode::kRefinedOnly: return "refined_only";
    case FusionMode::kDetectorOnly: return "detector_only";
    case FusionMode::kAlwaysUnion: return "always_union";
  }
  return "unknown";
}

FusionMode parse_fusion_mode(std::string_view name) {
  if (name == "per_frame") return FusionMode::kPerFrame;
  if (name == "per_video") return FusionMode::kPerVideo;
  if (name == "refined_only") return FusionMode::kRefinedOnly;
  if (name == "detector_only") return FusionMode::kDetectorOnly;
  if (name == "always_union") return FusionMode::kAlwaysUnion;
  throw ParameterError("unknown fusion mode '" + std::string(name) +
                       "' (expected per_frame, per_video, refined_only, detector_only or "
                       "always_union)");
}

void FusionConfig::validate() const {
  if (!(sigma >= 0.0 && sigma <= 1.0)) {
    throw ParameterError("sigma must lie in [0,1], got " + std::to_string(sigma));
  }
  if (!(area_ratio > 0.0) || !std::isfinite(area_ratio)) {
    throw ParameterError("area_ratio must be positive and finite, got " +
                         std::to_string(area_ratio));
  }
}

CombinedFrame combine_candidates(const ScoredCandidateSet& frame, double sigma, int width,
                                 int height) {
  CombinedFrame out{BinaryMask(width, height), 0.0};
  if (frame.candidates.empty()) return out;

  std::size_t best = 0;
  for (std::size_t k = 1; k < frame.candidates.size(); ++k) {
    if (frame.candidates[k].score > frame.candidates[best].score) best = k;
  }
  auto dst = out.mask.mutable_bits();
  for (std::size_t k = 0; k < frame.candidates.size(); ++k) {
    const Candidate& c = frame.candidates[k];
    require_same_shape(c.mask, out.mask,
                       "frame " + std::to_string(frame.frame_index) + ", candidate " +
                           std::to_string(k));
    if (k != best && !(c.score > sigma)) continue;
    const auto src = c.mask.bits();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
  }
  out.score = frame.candidates[best].score;
  return out;
}

CombinedTrack combine_track(const CandidateTrack& candidates, double sigma) {
  CombinedTrack out;
  out.track.video_id = candidates.video_id;
  out.track.expression_id = candidates.expression_id;
  out.track.frames.reserve(candidates.frames.size());
  out.scores.reserve(candidates.frames.size());
  for (const auto& frame : candidates.frames) {
    auto combined = combine_candidates(frame, sigma, candidates.width, candidates.height);
    out.track.frames.push_back(std::move(combined.mask));
    out.scores.push_back(combined.score);
  }
  return out;
}

PromptSelection select_prompt(const MaskTrack& detector_track, std::span<const double> scores) {
  if (detector_track.frames.empty()) {
    throw EmptyTrackError("cannot select a prompt from an empty track " +
                          detector_track.video_id + "/" + detector_track.expression_id);
  }
  if (scores.size() != detector_track.frames.size()) {
    throw ShapeError("prompt selection got " + std::to_string(scores.size()) +
                     " scores for a track of " + std::to_string(detector_track.frames.size()) +
                     " frames");
  }
  std::size_t best = 0;
  for (std::size_t t = 1; t < scores.size(); ++t) {
    if (scores[t] > scores[best]) best = t;
  }
  return {best, detector_track.frames[best], scores[best]};
}

bool cmf_condition(std::size_t refined_area, std::size_t detector_area, double area_ratio) {
  return static_cast<double>(refined_area) < area_ratio * static_cast<double>(detector_area);
}

BinaryMask cmf_frame(const BinaryMask& refined, const BinaryMask& detector, double area_ratio) {
  require_same_shape(refined, detector);
  if (cmf_condition(area(refined), area(detector), area_ratio)) {
    return mask_union(refined, detector);
  }
  return refined;
}

MaskTrack cmf_track(const MaskTrack& refined, const MaskTrack& detector,
                    const FusionConfig& config) {
  config.validate();
  require_compatible(refined, detector);

  MaskTrack out{refined.video_id, refined.expression_id, {}};
  out.frames.reserve(refined.frames.size());
  const std::size_t n = refined.frames.size();

  switch (config.mode) {
    case FusionMode::kRefinedOnly:
      out.frames = refined.frames;
      break;
    case FusionMode::kDetectorOnly:
      out.frames = detector.frames;
      break;
    case FusionMode::kAlwaysUnion:
      for (std::size_t t = 0; t < n; ++t) {
        out.frames.push_back(mask_union(refined.frames[t], detector.frames[t]));
      }
      break;
    case FusionMode::kPerFrame:
      for (std::size_t t = 0; t < n; ++t) {
        out.frames.push_back(cmf_frame(refined.frames[t], detector.frames[t], config.area_ratio));
      }
      break;
    case FusionMode::kPerVideo: {
      std::size_t refined_total = 0;
      std::size_t detector_total = 0;
      for (std::size_t t = 0; t < n; ++t) {
        refined_total += area(refined.frames[t]);
        detector_total += area(detector.frames[t]);
      }
      if (cmf_condition(refined_total, detector_total, config.area_ratio)) {
        for (std::size_t t = 0; t < n; ++t) {
          out.frames.push_back(mask_union(refined.frames[t], detector.frames[t]));
        }
      } else {
        out.frames = refined.frames;
      }
      break;
    }
  }
  return out;
}

}  // namespace rvosfuse
