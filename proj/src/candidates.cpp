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

#include "rvosfuse/candidates.hpp"

#include "json_util.hpp"
#include "rvosfuse/errors.hpp"
#include "rvosfuse/mask_io.hpp"
#include "rvosfuse/rle.hpp"
#include "rvosfuse/track.hpp"

namespace rvosfuse {

namespace fs = std::filesystem;
using detail::json;

void CandidateTrack::validate() const {
  const std::string where = "candidates for " + video_id + "/" + expression_id;
  if (width <= 0 || height <= 0) throw ValidationError(where + ": non-positive dimensions");
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (frames[t].frame_index != t) {
      throw ValidationError(where + ": entry " + std::to_string(t) + " has frame_index " +
                            std::to_string(frames[t].frame_index));
    }
    for (std::size_t k = 0; k < frames[t].candidates.size(); ++k) {
      const Candidate& c = frames[t].candidates[k];
      const std::string at = where + ", frame " + std::to_string(t) + ", candidate " +
                             std::to_string(k);
      if (!(c.score >= 0.0 && c.score <= 1.0)) {
        throw ValidationError(at + ": score " + std::to_string(c.score) + " outside [0,1]");
      }
      if (c.mask.width() != width || c.mask.height() != height) {
        throw ShapeError(at + ": mask is " + std::to_string(c.mask.width()) + "x" +
                         std::to_string(c.mask.height()) + ", expected " + std::to_string(width) +
                         "x" + std::to_string(height));
      }
    }
  }
}

fs::path candidates_path(const fs::path& root, const std::string& video_id,
                         const std::string& expression_id) {
  return track_directory(root, video_id, expression_id) / kCandidatesFilename;
}

void write_candidates(const fs::path& root, const CandidateTrack& track) {
  track.validate();
  json frames = json::array();
  for (const auto& f : track.frames) {
    json cands = json::array();
    for (const auto& c : f.candidates) {
      cands.push_back(json{{"score", c.score}, {"rle", detail::rle_to_json(encode_rle(c.mask))}});
    }
    frames.push_back(json{{"frame_index", f.frame_index}, {"candidates", std::move(cands)}});
  }
  json doc{{"format", "rvosfuse-candidates"},
           {"version", 1},
           {"video_id", track.video_id},
           {"expression_id", track.expression_id},
           {"width", track.width},
           {"height", track.height},
           {"frames", std::move(frames)}};
  detail::write_json_file(candidates_path(root, track.video_id, track.expression_id), doc);
}

CandidateTrack read_candidates(const fs::path& root, const std::string& video_id,
                               const std::string& expression_id) {
  const fs::path path = candidates_path(root, video_id, expression_id);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw MissingInputError("no detector candidates for video '" + video_id + "', expression '" +
                            expression_id + "' (expected " + path.string() + ")");
  }
  const json doc = detail::read_json_file(path);
  const std::string where = path.string();
  detail::check_format(doc, "rvosfuse-candidates", where);

  CandidateTrack track;
  track.video_id = detail::require_string(doc, "video_id", where);
  track.expression_id = detail::require_string(doc, "expression_id", where);
  if (track.video_id != video_id || track.expression_id != expression_id) {
    throw ValidationError(where + ": file names pair " + track.video_id + "/" +
                          track.expression_id + ", expected " + video_id + "/" + expression_id);
  }
  track.width = static_cast<int>(detail::require_integer(doc, "width", where));
  track.height = static_cast<int>(detail::require_integer(doc, "height", where));

  const json& frames = detail::require_array(doc, "frames", where);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const std::string fwhere = where + ": frames[" + std::to_string(t) + "]";
    ScoredCandidateSet set;
    const long long index = detail::require_integer(frames[t], "frame_index", fwhere);
    if (index < 0) throw ValidationError(fwhere + ": negative frame_index");
    set.frame_index = static_cast<std::size_t>(index);
    const json& cands = detail::require_array(frames[t], "candidates", fwhere);
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const std::string cwhere = fwhere + ".candidates[" + std::to_string(k) + "]";
      const double score = detail::require_number(cands[k], "score", cwhere);
      if (cands[k].contains("rle")) {
        try {
          set.candidates.push_back({decode_rle(detail::rle_from_json(cands[k]["rle"], cwhere)),
                                    score});
        } catch (const CorruptEncodingError& e) {
          throw CorruptEncodingError(cwhere + ": " + e.what());
        }
      } else if (cands[k].contains("mask")) {
        const fs::path ref = root / detail::require_string(cands[k], "mask", cwhere);
        if (!fs::is_regular_file(ref, ec)) {
          throw MissingInputError(cwhere + ": referenced mask " + ref.string() + " not found");
        }
        set.candidates.push_back({read_mask(ref), score});
      } else {
        throw ValidationError(cwhere + ": needs either 'rle' or 'mask'");
      }
    }
    track.frames.push_back(std::move(set));
  }
  track.validate();
  return track;
}

}  // namespace rvosfuse
