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
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rvosfuse/rle.hpp"
#include "rvosfuse/track.hpp"

namespace rvosfuse {

/// A per-frame mask reference: a PNG path relative to the corpus root, or an inline RLE.
using MaskRef = std::variant<std::string, RleMask>;

struct ExpressionEntry {
  std::string expression_id;
  std::string text;
  std::optional<std::vector<MaskRef>> ground_truth;
};

struct VideoEntry {
  std::string video_id;
  std::size_t frame_count = 0;
  int width = 0;
  int height = 0;
  std::vector<ExpressionEntry> expressions;
};

struct ExpressionKey {
  std::string video_id;
  std::string expression_id;

  friend auto operator<=>(const ExpressionKey&, const ExpressionKey&) = default;
};

struct Manifest {
  /// Directory the manifest was loaded from; mask paths resolve against it.
  std::filesystem::path root;
  std::vector<VideoEntry> videos;
  /// Free-form JSON object text carried alongside the corpus (generator settings).
  std::string metadata_json;

  /// Every (video, expression) pair, sorted by video_id then expression_id.
  std::vector<ExpressionKey> keys() const;

  const VideoEntry& video(const std::string& video_id) const;
  const ExpressionEntry& expression(const ExpressionKey& key) const;

  /// True when every expression carries ground truth.
  bool has_ground_truth() const;
};

inline constexpr const char* kManifestFilename = "manifest.json";

/// Parses and fully validates a manifest, including existence and size of
/// every referenced ground-truth mask. Any defect throws ValidationError
/// naming the offending entry.
Manifest load_manifest(const std::filesystem::path& path);

/// Validates then writes. Mask files referenced by path must already exist.
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

/// Structural checks shared by load and save.
void validate_manifest(const Manifest& manifest);

/// Decodes the ground-truth track for one expression. Throws ValidationError
/// if the expression has none.
MaskTrack load_ground_truth(const Manifest& manifest, const ExpressionKey& key);

}  // namespace rvosfuse
