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

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "rvosfuse/candidates.hpp"
#include "rvosfuse/track.hpp"

namespace rvosfuse {

/// Portable generator for synthetic scenes.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the C++
/// standard, and derives every variate with explicit arithmetic rather than
/// the implementation-defined <random> distributions. Equal seeds give equal
/// scenes on every conforming platform.
class SceneRng {
 public:
  explicit SceneRng(std::uint64_t seed) : engine_(seed) {}

  /// 53-bit uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

struct NoiseParams {
  /// Each candidate is dilated or eroded by a radius drawn from [-jitter, jitter].
  int jitter_radius = 0;
  /// Per-frame probability of one extra small low-score blob.
  double spurious_rate = 0.0;
  /// Uniform noise in [-score_noise, score_noise] added to every score, then clamped.
  double score_noise = 0.0;
  /// Per-object, per-frame probability the detector misses a visible object.
  double miss_rate = 0.0;
};

struct SceneParams {
  std::uint64_t seed = 0;
  std::size_t frames = 8;
  int width = 128;
  int height = 128;
  int n_referred = 1;
  int n_distractors = 0;
  NoiseParams noise;
  /// Probability that each object leaves the scene for good at a random frame.
  double vanish_prob = 0.0;

  /// Throws ParameterError for dimensions below 16, zero frames, no referred
  /// objects, probabilities outside [0,1], or more objects than fit.
  void validate() const;
};

enum class ShapeKind { kRectangle, kEllipse };

/// Centre and half-extents, in pixels.
struct ObjectState {
  double cx = 0.0;
  double cy = 0.0;
  double rx = 0.0;
  double ry = 0.0;
};

struct SceneObject {
  ShapeKind shape = ShapeKind::kRectangle;
  bool referred = false;
  std::vector<ObjectState> trajectory;
  /// Visible on frames [0, last_frame].
  std::size_t last_frame = 0;

  bool visible(std::size_t t) const noexcept { return t <= last_frame; }
};

struct SyntheticScene {
  SceneParams params;
  std::vector<SceneObject> objects;
  MaskTrack gt_track;
  CandidateTrack candidates;
};

BinaryMask rasterize(const SceneObject& object, std::size_t frame, int width, int height);

/// Objects live in disjoint grid cells and bounce inside them, so distinct
/// objects never touch. The referred objects of a scene share one shape and
/// a base scale (each shrunk by up to 15%), and are larger than distractors.
/// Referred candidates score in [0.55, 0.95]; distractors and spurious blobs
/// in [0.05, 0.45], before score noise. Ground truth is the exact union of
/// the visible referred objects.
SyntheticScene generate_scene(const SceneParams& params);

struct CorpusParams {
  SceneParams scene;
  std::size_t scene_count = 1;
  std::string video_prefix = "synth";
};

std::string corpus_params_to_json(const CorpusParams& params);
/// Missing keys keep the values already in `base`.
CorpusParams corpus_params_from_json(const std::string& text, CorpusParams base = {});

/// Scene i uses seed `scene.seed + i` and becomes video `<prefix>_<iiii>`
/// with one expression "exp0". Writes `<root>/manifest.json`, ground truth
/// under `<root>/gt/` and detector candidates under `<root>/detector/`.
void write_synthetic_corpus(const CorpusParams& params, const std::filesystem::path& root);

}  // namespace rvosfuse
