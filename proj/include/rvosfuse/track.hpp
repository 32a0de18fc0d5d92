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

/// One mask per frame for a (video, expression) pair.
struct MaskTrack {
  std::string video_id;
  std::string expression_id;
  std::vector<BinaryMask> frames;

  std::size_t frame_count() const noexcept { return frames.size(); }

  /// Throws ShapeError naming the first frame whose size differs from frame 0.
  void validate() const;
};

/// Throws ShapeError naming the first offending frame when the two tracks
/// differ in length or per-frame dimensions.
void require_compatible(const MaskTrack& a, const MaskTrack& b);

/// "00042.png"
std::string frame_filename(std::size_t frame_index);

/// <root>/<video_id>/<expression_id>
std::filesystem::path track_directory(const std::filesystem::path& root, const std::string& video_id,
                                      const std::string& expression_id);

/// Writes every frame as a PNG under track_directory(root, ...), creating directories.
void write_track(const std::filesystem::path& root, const MaskTrack& track);

/// Reads `frame_count` frames. Throws MissingInputError naming the pair and
/// every missing frame, or ShapeError when a frame is not width x height.
MaskTrack read_track(const std::filesystem::path& root, const std::string& video_id,
                     const std::string& expression_id, std::size_t frame_count, int width,
                     int height);

}  // namespace rvosfuse
