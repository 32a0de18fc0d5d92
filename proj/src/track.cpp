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

#include "rvosfuse/track.hpp"

#include <cstdio>

#include "rvosfuse/errors.hpp"
#include "rvosfuse/mask_io.hpp"

namespace rvosfuse {

namespace fs = std::filesystem;

void MaskTrack::validate() const {
  for (std::size_t t = 1; t < frames.size(); ++t) {
    if (!frames[t].same_shape(frames[0])) {
      throw ShapeError("track " + video_id + "/" + expression_id + ": frame " + std::to_string(t) +
                       " is " + std::to_string(frames[t].width()) + "x" +
                       std::to_string(frames[t].height()) + ", frame 0 is " +
                       std::to_string(frames[0].width()) + "x" +
                       std::to_string(frames[0].height()));
    }
  }
}

void require_compatible(const MaskTrack& a, const MaskTrack& b) {
  if (a.frame_count() != b.frame_count()) {
    const std::size_t first = std::min(a.frame_count(), b.frame_count());
    throw ShapeError("track frame counts differ (" + std::to_string(a.frame_count()) + " vs " +
                     std::to_string(b.frame_count()) + "); first unmatched frame " +
                     std::to_string(first));
  }
  for (std::size_t t = 0; t < a.frame_count(); ++t) {
    require_same_shape(a.frames[t], b.frames[t], "frame " + std::to_string(t));
  }
}

std::string frame_filename(std::size_t frame_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%05zu.png", frame_index);
  return buf;
}

fs::path track_directory(const fs::path& root, const std::string& video_id,
                         const std::string& expression_id) {
  return root / video_id / expression_id;
}

void write_track(const fs::path& root, const MaskTrack& track) {
  const fs::path dir = track_directory(root, track.video_id, track.expression_id);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  for (std::size_t t = 0; t < track.frames.size(); ++t) {
    write_mask(track.frames[t], dir / frame_filename(t));
  }
}

MaskTrack read_track(const fs::path& root, const std::string& video_id,
                     const std::string& expression_id, std::size_t frame_count, int width,
                     int height) {
  const fs::path dir = track_directory(root, video_id, expression_id);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw MissingInputError("no track for video '" + video_id + "', expression '" +
                            expression_id + "' (expected directory " + dir.string() + ")");
  }
  std::vector<std::size_t> missing;
  for (std::size_t t = 0; t < frame_count; ++t) {
    if (!fs::is_regular_file(dir / frame_filename(t), ec)) missing.push_back(t);
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size(); ++i) {
      if (i) list += ", ";
      list += std::to_string(missing[i]);
    }
    throw MissingInputError("track for video '" + video_id + "', expression '" + expression_id +
                            "' is missing frame(s) " + list + " under " + dir.string());
  }

  MaskTrack track{video_id, expression_id, {}};
  track.frames.reserve(frame_count);
  for (std::size_t t = 0; t < frame_count; ++t) {
    BinaryMask m = read_mask(dir / frame_filename(t));
    if (m.width() != width || m.height() != height) {
      throw ShapeError("video '" + video_id + "', expression '" + expression_id + "', frame " +
                       std::to_string(t) + ": mask is " + std::to_string(m.width()) + "x" +
                       std::to_string(m.height()) + ", expected " + std::to_string(width) + "x" +
                       std::to_string(height));
    }
    track.frames.push_back(std::move(m));
  }
  return track;
}

}  // namespace rvosfuse
