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

#include "rvosfuse/mask.hpp"

namespace rvosfuse {

struct Candidate {
  BinaryMask mask;
  double score = 0.0;
};

/// Detector output for one frame: any number of (mask, score) proposals.
struct ScoredCandidateSet {
  std::size_t frame_index = 0;
  std::vector<Candidate> candidates;
};

/// Every frame's candidate set for one (video, expression) pair, as stored
/// in `<root>/<video_id>/<expression_id>/candidates.json`.
struct CandidateTrack {
  std::string video_id;
  std::string expression_id;
  int width = 0;
  int height = 0;
  std::vector<ScoredCandidateSet> frames;

  /// Checks frame indices are 0..T-1 in order, scores lie in [0,1] and every
  /// mask is width x height. Throws ValidationError or ShapeError.
  void validate() const;
};

inline constexpr const char* kCandidatesFilename = "candidates.json";

std::filesystem::path candidates_path(const std::filesystem::path& root,
                                      const std::string& video_id,
                                      const std::string& expression_id);

/// Masks are written inline as RLE.
void write_candidates(const std::filesystem::path& root, const CandidateTrack& track);

/// Accepts inline RLE ("rle") or PNG references ("mask", relative to `root`).
/// Throws MissingInputError if the file is absent.
CandidateTrack read_candidates(const std::filesystem::path& root, const std::string& video_id,
                               const std::string& expression_id);

}  // namespace rvosfuse
