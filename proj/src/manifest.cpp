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

#include "rvosfuse/manifest.hpp"

#include <algorithm>
#include <set>

#include "json_util.hpp"
#include "rvosfuse/errors.hpp"
#include "rvosfuse/mask_io.hpp"

namespace rvosfuse {

namespace fs = std::filesystem;
using detail::json;

namespace {

std::string frame_label(const std::string& video, const std::string& expr, std::size_t t) {
  return "video '" + video + "', expression '" + expr + "', frame " + std::to_string(t);
}

void validate_reference(const Manifest& manifest, const VideoEntry& video,
                        const ExpressionEntry& expr, std::size_t t, const MaskRef& ref) {
  const std::string where = frame_label(video.video_id, expr.expression_id, t);
  int w = 0;
  int h = 0;
  if (const auto* rel = std::get_if<std::string>(&ref)) {
    const fs::path path = manifest.root / *rel;
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
      throw ValidationError(where + ": ground-truth mask " + path.string() + " does not exist");
    }
    try {
      std::tie(w, h) = read_mask_dimensions(path);
    } catch (const Error& e) {
      throw ValidationError(where + ": " + e.what());
    }
  } else {
    const auto& rle = std::get<RleMask>(ref);
    w = rle.width;
    h = rle.height;
    try {
      (void)decode_rle(rle);
    } catch (const CorruptEncodingError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (w != video.width || h != video.height) {
    throw ValidationError(where + ": ground-truth mask is " + std::to_string(w) + "x" +
                          std::to_string(h) + ", video is " + std::to_string(video.width) + "x" +
                          std::to_string(video.height));
  }
}

}  // namespace

std::vector<ExpressionKey> Manifest::keys() const {
  std::vector<ExpressionKey> out;
  for (const auto& v : videos) {
    for (const auto& e : v.expressions) out.push_back({v.video_id, e.expression_id});
  }
  std::sort(out.begin(), out.end());
  return out;
}

const VideoEntry& Manifest::video(const std::string& video_id) const {
  for (const auto& v : videos) {
    if (v.video_id == video_id) return v;
  }
  throw ValidationError("manifest has no video '" + video_id + "'");
}

const ExpressionEntry& Manifest::expression(const ExpressionKey& key) const {
  for (const auto& e : video(key.video_id).expressions) {
    if (e.expression_id == key.expression_id) return e;
  }
  throw ValidationError("manifest has no expression '" + key.expression_id + "' in video '" +
                        key.video_id + "'");
}

bool Manifest::has_ground_truth() const {
  for (const auto& v : videos) {
    for (const auto& e : v.expressions) {
      if (!e.ground_truth) return false;
    }
  }
  return !videos.empty();
}

void validate_manifest(const Manifest& manifest) {
  std::set<std::string> video_ids;
  std::set<ExpressionKey> pairs;
  for (std::size_t i = 0; i < manifest.videos.size(); ++i) {
    const VideoEntry& v = manifest.videos[i];
    const std::string where = "videos[" + std::to_string(i) + "]";
    detail::require_path_component(v.video_id, "video_id", where);
    if (!video_ids.insert(v.video_id).second) {
      throw ValidationError(where + ": duplicate video_id '" + v.video_id + "'");
    }
    if (v.frame_count < 1) {
      throw ValidationError("video '" + v.video_id + "': frame_count must be at least 1");
    }
    if (v.width <= 0 || v.height <= 0) {
      throw ValidationError("video '" + v.video_id + "': width and height must be positive");
    }
    for (std::size_t k = 0; k < v.expressions.size(); ++k) {
      const ExpressionEntry& e = v.expressions[k];
      detail::require_path_component(e.expression_id, "expression_id",
                                     "video '" + v.video_id + "', expressions[" +
                                         std::to_string(k) + "]");
      if (!pairs.insert({v.video_id, e.expression_id}).second) {
        throw ValidationError("duplicate expression: video '" + v.video_id + "', expression '" +
                              e.expression_id + "'");
      }
      if (!e.ground_truth) continue;
      if (e.ground_truth->size() != v.frame_count) {
        const std::size_t first_missing = std::min(e.ground_truth->size(), v.frame_count);
        throw ValidationError(frame_label(v.video_id, e.expression_id, first_missing) +
                              ": ground truth lists " + std::to_string(e.ground_truth->size()) +
                              " frame(s), video has " + std::to_string(v.frame_count));
      }
      for (std::size_t t = 0; t < v.frame_count; ++t) {
        validate_reference(manifest, v, e, t, (*e.ground_truth)[t]);
      }
    }
  }
}

Manifest load_manifest(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw MissingInputError("manifest " + path.string() + " does not exist");
  }
  json doc;
  try {
    doc = detail::read_json_file(path);
  } catch (const FormatError& e) {
    throw ValidationError(e.what());
  }

  detail::check_format(doc, "rvosfuse-manifest", "manifest");
  Manifest m;
  m.root = path.parent_path();
  const json& videos = detail::require_array(doc, "videos", "manifest");
  for (std::size_t i = 0; i < videos.size(); ++i) {
    const std::string where = "videos[" + std::to_string(i) + "]";
    VideoEntry v;
    v.video_id = detail::require_string(videos[i], "video_id", where);
    const long long frames = detail::require_integer(videos[i], "frame_count", where);
    if (frames < 1) throw ValidationError("video '" + v.video_id + "': frame_count must be >= 1");
    v.frame_count = static_cast<std::size_t>(frames);
    v.width = static_cast<int>(detail::require_integer(videos[i], "width", where));
    v.height = static_cast<int>(detail::require_integer(videos[i], "height", where));
    const json& exprs = detail::require_array(videos[i], "expressions", where);
    for (std::size_t k = 0; k < exprs.size(); ++k) {
      const std::string ewhere = "video '" + v.video_id + "', expressions[" + std::to_string(k) + "]";
      ExpressionEntry e;
      e.expression_id = detail::require_string(exprs[k], "expression_id", ewhere);
      if (exprs[k].contains("text")) e.text = detail::require_string(exprs[k], "text", ewhere);
      if (exprs[k].contains("ground_truth") && !exprs[k]["ground_truth"].is_null()) {
        const json& gt = detail::require_array(exprs[k], "ground_truth", ewhere);
        std::vector<MaskRef> refs;
        for (std::size_t t = 0; t < gt.size(); ++t) {
          const std::string gwhere = frame_label(v.video_id, e.expression_id, t);
          if (gt[t].is_string()) {
            refs.emplace_back(gt[t].get<std::string>());
          } else if (gt[t].is_object()) {
            refs.emplace_back(detail::rle_from_json(gt[t], gwhere));
          } else {
            throw ValidationError(gwhere + ": ground-truth entry must be a path or an RLE object");
          }
        }
        e.ground_truth = std::move(refs);
      }
      v.expressions.push_back(std::move(e));
    }
    m.videos.push_back(std::move(v));
  }
  if (doc.contains("metadata")) m.metadata_json = doc["metadata"].dump();
  validate_manifest(m);
  return m;
}

void save_manifest(const Manifest& manifest, const fs::path& path) {
  validate_manifest(manifest);
  json videos = json::array();
  for (const auto& v : manifest.videos) {
    json exprs = json::array();
    for (const auto& e : v.expressions) {
      json entry{{"expression_id", e.expression_id}, {"text", e.text}};
      if (e.ground_truth) {
        json gt = json::array();
        for (const auto& ref : *e.ground_truth) {
          if (const auto* rel = std::get_if<std::string>(&ref)) {
            gt.push_back(*rel);
          } else {
            gt.push_back(detail::rle_to_json(std::get<RleMask>(ref)));
          }
        }
        entry["ground_truth"] = std::move(gt);
      }
      exprs.push_back(std::move(entry));
    }
    videos.push_back(json{{"video_id", v.video_id},
                          {"frame_count", v.frame_count},
                          {"width", v.width},
                          {"height", v.height},
                          {"expressions", std::move(exprs)}});
  }
  json doc{{"format", "rvosfuse-manifest"}, {"version", 1}, {"videos", std::move(videos)}};
  if (!manifest.metadata_json.empty()) doc["metadata"] = json::parse(manifest.metadata_json);
  detail::write_json_file(path, doc);
}

MaskTrack load_ground_truth(const Manifest& manifest, const ExpressionKey& key) {
  const VideoEntry& v = manifest.video(key.video_id);
  const ExpressionEntry& e = manifest.expression(key);
  if (!e.ground_truth) {
    throw ValidationError("video '" + key.video_id + "', expression '" + key.expression_id +
                          "' has no ground truth");
  }
  MaskTrack track{key.video_id, key.expression_id, {}};
  track.frames.reserve(v.frame_count);
  for (std::size_t t = 0; t < v.frame_count; ++t) {
    const MaskRef& ref = (*e.ground_truth)[t];
    BinaryMask m = std::holds_alternative<std::string>(ref)
                       ? read_mask(manifest.root / std::get<std::string>(ref))
                       : decode_rle(std::get<RleMask>(ref));
    if (m.width() != v.width || m.height() != v.height) {
      throw ValidationError(frame_label(key.video_id, key.expression_id, t) +
                            ": ground-truth size changed since validation");
    }
    track.frames.push_back(std::move(m));
  }
  return track;
}

}  // namespace rvosfuse
