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

#include "rvosfuse/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json_util.hpp"
#include "rvosfuse/errors.hpp"
#include "rvosfuse/manifest.hpp"

namespace rvosfuse {

namespace fs = std::filesystem;
using detail::json;

namespace {

constexpr double kReferredMin = 0.20;  // half-extent as a fraction of the cell
constexpr double kReferredMax = 0.30;
constexpr double kReferredSpread = 0.15;  // per-object shrink below the shared scale
constexpr double kDistractorMin = 0.10;
constexpr double kDistractorMax = 0.16;
constexpr double kMaxSpeed = 1.5;  // pixels per frame

int grid_side(int objects) {
  int g = 1;
  while (g * g < objects) ++g;
  return g;
}

int cell_margin(const NoiseParams& noise) { return noise.jitter_radius + 2; }

BinaryMask erode(const BinaryMask& m, int radius) {
  BinaryMask inverse = m;
  for (auto& b : inverse.mutable_bits()) b = b ? 0 : 1;
  BinaryMask grown = dilate(inverse, radius);
  for (auto& b : grown.mutable_bits()) b = b ? 0 : 1;
  return grown;
}

double noisy_score(SceneRng& rng, double lo, double hi, double noise) {
  double s = rng.uniform(lo, hi);
  if (noise > 0.0) s += rng.uniform(-noise, noise);
  return std::clamp(s, 0.0, 1.0);
}

}  // namespace

int SceneRng::uniform_int(int lo, int hi) {
  const double span = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
  const int v = lo + static_cast<int>(std::floor(uniform01() * span));
  return std::min(v, hi);
}

void SceneParams::validate() const {
  if (width < 16 || height < 16) {
    throw ParameterError("scene dimensions must be at least 16x16, got " + std::to_string(width) +
                         "x" + std::to_string(height));
  }
  if (frames < 1) throw ParameterError("scene needs at least one frame");
  if (n_referred < 1) throw ParameterError("scene needs at least one referred object");
  if (n_distractors < 0) throw ParameterError("distractor count must be non-negative");
  if (noise.jitter_radius < 0) throw ParameterError("jitter radius must be non-negative");
  for (double p : {noise.spurious_rate, noise.miss_rate, vanish_prob}) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("probabilities must lie in [0,1]");
  }
  if (!(noise.score_noise >= 0.0 && noise.score_noise <= 1.0)) {
    throw ParameterError("score noise must lie in [0,1]");
  }
  const int g = grid_side(n_referred + n_distractors);
  const int cell = std::min(width, height) / g;
  const int needed = std::max(10, 5 * (cell_margin(noise) + 1));
  if (cell < needed) {
    throw ParameterError(std::to_string(n_referred + n_distractors) + " objects need cells of at least " +
                         std::to_string(needed) + " px; a " + std::to_string(width) + "x" +
                         std::to_string(height) + " scene gives " + std::to_string(cell));
  }
}

BinaryMask rasterize(const SceneObject& object, std::size_t frame, int width, int height) {
  BinaryMask m(width, height);
  if (!object.visible(frame)) return m;
  const ObjectState& s = object.trajectory.at(frame);
  const int r0 = std::max(0, static_cast<int>(std::floor(s.cy - s.ry)) - 1);
  const int r1 = std::min(height - 1, static_cast<int>(std::ceil(s.cy + s.ry)) + 1);
  const int c0 = std::max(0, static_cast<int>(std::floor(s.cx - s.rx)) - 1);
  const int c1 = std::min(width - 1, static_cast<int>(std::ceil(s.cx + s.rx)) + 1);
  for (int r = r0; r <= r1; ++r) {
    const double dy = (r + 0.5 - s.cy) / s.ry;
    for (int c = c0; c <= c1; ++c) {
      const double dx = (c + 0.5 - s.cx) / s.rx;
      const bool inside = object.shape == ShapeKind::kRectangle
                              ? (std::abs(dx) <= 1.0 && std::abs(dy) <= 1.0)
                              : (dx * dx + dy * dy <= 1.0);
      if (inside) m.set(r, c);
    }
  }
  return m;
}

SyntheticScene generate_scene(const SceneParams& params) {
  params.validate();
  SceneRng rng(params.seed);
  const int n_objects = params.n_referred + params.n_distractors;
  const int g = grid_side(n_objects);
  const int cell_w = params.width / g;
  const int cell_h = params.height / g;
  const int margin = cell_margin(params.noise);
  const std::size_t T = params.frames;

  std::vector<int> cells(static_cast<std::size_t>(g) * g);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<int>(i);
  for (std::size_t i = cells.size(); i > 1; --i) {
    std::swap(cells[i - 1], cells[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
  }

  // Referred objects are one kind of thing: shared shape and base scale.
  const ShapeKind referred_shape = rng.bernoulli(0.5) ? ShapeKind::kRectangle : ShapeKind::kEllipse;
  const double referred_sx = rng.uniform(kReferredMin, kReferredMax);
  const double referred_sy = rng.uniform(kReferredMin, kReferredMax);

  SyntheticScene scene;
  scene.params = params;
  for (int k = 0; k < n_objects; ++k) {
    SceneObject obj;
    obj.referred = k < params.n_referred;
    double rx = 0.0;
    double ry = 0.0;
    if (obj.referred) {
      obj.shape = referred_shape;
      rx = referred_sx * rng.uniform(1.0 - kReferredSpread, 1.0) * cell_w;
      ry = referred_sy * rng.uniform(1.0 - kReferredSpread, 1.0) * cell_h;
    } else {
      obj.shape = rng.bernoulli(0.5) ? ShapeKind::kRectangle : ShapeKind::kEllipse;
      rx = rng.uniform(kDistractorMin, kDistractorMax) * cell_w;
      ry = rng.uniform(kDistractorMin, kDistractorMax) * cell_h;
    }
    const int cell = cells[static_cast<std::size_t>(k)];
    const double x0 = (cell % g) * cell_w + margin + rx;
    const double x1 = (cell % g + 1) * cell_w - margin - rx;
    const double y0 = (cell / g) * cell_h + margin + ry;
    const double y1 = (cell / g + 1) * cell_h - margin - ry;
    ObjectState s{rng.uniform(x0, x1), rng.uniform(y0, y1), rx, ry};
    double vx = rng.uniform(-kMaxSpeed, kMaxSpeed);
    double vy = rng.uniform(-kMaxSpeed, kMaxSpeed);
    obj.trajectory.reserve(T);
    for (std::size_t t = 0; t < T; ++t) {
      obj.trajectory.push_back(s);
      if (s.cx + vx < x0 || s.cx + vx > x1) vx = -vx;
      if (s.cy + vy < y0 || s.cy + vy > y1) vy = -vy;
      s.cx = std::clamp(s.cx + vx, x0, x1);
      s.cy = std::clamp(s.cy + vy, y0, y1);
    }
    obj.last_frame = T - 1;
    if (T >= 2 && rng.bernoulli(params.vanish_prob)) {
      obj.last_frame = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(T) - 1)) - 1;
    }
    scene.objects.push_back(std::move(obj));
  }

  const int w = params.width;
  const int h = params.height;
  scene.gt_track.frames.reserve(T);
  scene.candidates.width = w;
  scene.candidates.height = h;
  for (std::size_t t = 0; t < T; ++t) {
    BinaryMask gt(w, h);
    ScoredCandidateSet set;
    set.frame_index = t;
    for (const auto& obj : scene.objects) {
      if (!obj.visible(t)) continue;
      BinaryMask m = rasterize(obj, t, w, h);
      if (obj.referred) gt = mask_union(gt, m);
      if (params.noise.miss_rate > 0.0 && rng.bernoulli(params.noise.miss_rate)) continue;
      if (params.noise.jitter_radius > 0) {
        const int j = rng.uniform_int(-params.noise.jitter_radius, params.noise.jitter_radius);
        if (j > 0) m = dilate(m, j);
        if (j < 0) m = erode(m, -j);
      }
      const double score = obj.referred ? noisy_score(rng, 0.55, 0.95, params.noise.score_noise)
                                        : noisy_score(rng, 0.05, 0.45, params.noise.score_noise);
      set.candidates.push_back({std::move(m), score});
    }
    if (params.noise.spurious_rate > 0.0 && rng.bernoulli(params.noise.spurious_rate)) {
      SceneObject blob;
      blob.shape = ShapeKind::kEllipse;
      blob.last_frame = t;
      blob.trajectory.assign(t + 1, ObjectState{});
      blob.trajectory[t] = {rng.uniform(4.0, w - 4.0), rng.uniform(4.0, h - 4.0),
                            rng.uniform(2.0, 4.0), rng.uniform(2.0, 4.0)};
      const double score = noisy_score(rng, 0.05, 0.45, params.noise.score_noise);
      set.candidates.push_back({rasterize(blob, t, w, h), score});
    }
    scene.gt_track.frames.push_back(std::move(gt));
    scene.candidates.frames.push_back(std::move(set));
  }
  return scene;
}

std::string corpus_params_to_json(const CorpusParams& params) {
  const SceneParams& s = params.scene;
  json doc{{"seed", s.seed},
           {"frames", s.frames},
           {"width", s.width},
           {"height", s.height},
           {"n_referred", s.n_referred},
           {"n_distractors", s.n_distractors},
           {"vanish_prob", s.vanish_prob},
           {"noise",
            {{"jitter_radius", s.noise.jitter_radius},
             {"spurious_rate", s.noise.spurious_rate},
             {"score_noise", s.noise.score_noise},
             {"miss_rate", s.noise.miss_rate}}},
           {"scene_count", params.scene_count},
           {"video_prefix", params.video_prefix}};
  return doc.dump(2) + "\n";
}

CorpusParams corpus_params_from_json(const std::string& text, CorpusParams base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("cannot parse generator config: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("generator config must be a JSON object");
  const std::string where = "generator config";
  SceneParams& s = base.scene;
  auto read_int = [&](const json& obj, const char* key, auto& out) {
    if (obj.contains(key)) out = static_cast<std::remove_reference_t<decltype(out)>>(
                               detail::require_integer(obj, key, where));
  };
  auto read_num = [&](const json& obj, const char* key, double& out) {
    if (obj.contains(key)) out = detail::require_number(obj, key, where);
  };
  detail::require_known_keys(doc, {"seed", "frames", "width", "height", "n_referred", "n_distractors",
                                   "vanish_prob", "noise", "scene_count", "video_prefix"},
                             where);
  if (doc.contains("seed") && detail::require_integer(doc, "seed", where) < 0) {
    throw ParameterError(where + ": seed must be non-negative");
  }
  read_int(doc, "seed", s.seed);
  read_int(doc, "frames", s.frames);
  read_int(doc, "width", s.width);
  read_int(doc, "height", s.height);
  read_int(doc, "n_referred", s.n_referred);
  read_int(doc, "n_distractors", s.n_distractors);
  read_num(doc, "vanish_prob", s.vanish_prob);
  if (doc.contains("noise")) {
    const json& n = doc["noise"];
    if (!n.is_object()) throw ValidationError(where + ": 'noise' must be an object");
    detail::require_known_keys(n, {"jitter_radius", "spurious_rate", "score_noise", "miss_rate"}, where + " noise");
    read_int(n, "jitter_radius", s.noise.jitter_radius);
    read_num(n, "spurious_rate", s.noise.spurious_rate);
    read_num(n, "score_noise", s.noise.score_noise);
    read_num(n, "miss_rate", s.noise.miss_rate);
  }
  read_int(doc, "scene_count", base.scene_count);
  if (doc.contains("video_prefix")) base.video_prefix = detail::require_string(doc, "video_prefix", where);
  return base;
}

void write_synthetic_corpus(const CorpusParams& params, const fs::path& root) {
  params.scene.validate();
  if (params.scene_count < 1) throw ParameterError("corpus needs at least one scene");
  detail::require_path_component(params.video_prefix, "video prefix", "generator config");

  Manifest manifest;
  manifest.root = root;
  for (std::size_t i = 0; i < params.scene_count; ++i) {
    SceneParams sp = params.scene;
    sp.seed = params.scene.seed + i;
    SyntheticScene scene = generate_scene(sp);

    char id[64];
    std::snprintf(id, sizeof(id), "%s_%04zu", params.video_prefix.c_str(), i);
    const std::string video_id = id;
    const std::string expression_id = "exp0";
    scene.gt_track.video_id = video_id;
    scene.gt_track.expression_id = expression_id;
    scene.candidates.video_id = video_id;
    scene.candidates.expression_id = expression_id;

    write_track(root / "gt", scene.gt_track);
    write_candidates(root / "detector", scene.candidates);

    ExpressionEntry expr;
    expr.expression_id = expression_id;
    expr.text = "synthetic scene: " + std::to_string(sp.n_referred) + " referred object(s), " +
                std::to_string(sp.n_distractors) + " distractor(s)";
    std::vector<MaskRef> refs;
    for (std::size_t t = 0; t < sp.frames; ++t) {
      refs.emplace_back((fs::path("gt") / video_id / expression_id / frame_filename(t)).generic_string());
    }
    expr.ground_truth = std::move(refs);
    manifest.videos.push_back({video_id, sp.frames, sp.width, sp.height, {std::move(expr)}});
  }
  manifest.metadata_json = json{{"generator", json::parse(corpus_params_to_json(params))}}.dump();
  save_manifest(manifest, root / kManifestFilename);
}

}  // namespace rvosfuse
