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

#include "rvosfuse/pipeline.hpp"

#include "json_util.hpp"
#include "rvosfuse/candidates.hpp"
#include "rvosfuse/errors.hpp"
#include "rvosfuse/fusion.hpp"
#include "rvosfuse/parallel.hpp"
#include "rvosfuse/refiner.hpp"
#include "rvosfuse/report.hpp"

namespace rvosfuse {

namespace fs = std::filesystem;
using detail::json;

namespace {

constexpr const char* kScoresFilename = "scores.json";
constexpr const char* kPromptFilename = "prompt.json";

template <typename Fn>
void for_each_pair(const Manifest& manifest, const char* stage, int jobs, Fn&& fn) {
  const auto keys = manifest.keys();
  parallel_for(keys.size(), jobs, [&](std::size_t i) {
    const ExpressionKey& key = keys[i];
    try {
      fn(key, manifest.video(key.video_id));
    } catch (const Error& e) {
      throw_error(e.kind(), std::string("stage '") + stage + "', video '" + key.video_id +
                                "', expression '" + key.expression_id + "': " + e.what());
    }
  });
}

MaskTrack read_pair(const fs::path& root, const ExpressionKey& key, const VideoEntry& video) {
  return read_track(root, key.video_id, key.expression_id, video.frame_count, video.width,
                    video.height);
}

fs::path normalized(const fs::path& p) {
  std::error_code ec;
  fs::path out = fs::weakly_canonical(fs::absolute(p), ec);
  return ec ? fs::absolute(p).lexically_normal() : out;
}

}  // namespace

void run_combine(const Manifest& manifest, const fs::path& detector_root, const fs::path& out_root,
                 double sigma, int jobs) {
  FusionConfig{sigma}.validate();
  for_each_pair(manifest, "combine", jobs, [&](const ExpressionKey& key, const VideoEntry& video) {
    const CandidateTrack candidates = read_candidates(detector_root, key.video_id, key.expression_id);
    if (candidates.width != video.width || candidates.height != video.height) {
      throw ShapeError("detector candidates are " + std::to_string(candidates.width) + "x" +
                       std::to_string(candidates.height) + ", video is " +
                       std::to_string(video.width) + "x" + std::to_string(video.height));
    }
    if (candidates.frames.size() != video.frame_count) {
      throw MissingInputError("detector candidates cover " + std::to_string(candidates.frames.size()) +
                              " frame(s), manifest has " + std::to_string(video.frame_count) +
                              "; first missing frame " + std::to_string(candidates.frames.size()));
    }
    const CombinedTrack combined = combine_track(candidates, sigma);
    write_track(out_root, combined.track);
    detail::write_json_file(track_directory(out_root, key.video_id, key.expression_id) / kScoresFilename,
                            json{{"format", "rvosfuse-scores"},
                                 {"version", 1},
                                 {"video_id", key.video_id},
                                 {"expression_id", key.expression_id},
                                 {"sigma", sigma},
                                 {"combined_scores", combined.scores}});
  });
}

std::vector<double> read_combined_scores(const fs::path& combined_root, const ExpressionKey& key,
                                         std::size_t frame_count) {
  const fs::path path = track_directory(combined_root, key.video_id, key.expression_id) / kScoresFilename;
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw MissingInputError("no combined scores (expected " + path.string() + ")");
  }
  const json doc = detail::read_json_file(path);
  detail::check_format(doc, "rvosfuse-scores", path.string());
  std::vector<double> scores;
  for (const json& s : detail::require_array(doc, "combined_scores", path.string())) {
    if (!s.is_number()) throw ValidationError(path.string() + ": scores must be numbers");
    scores.push_back(s.get<double>());
  }
  if (scores.size() != frame_count) {
    throw ValidationError(path.string() + ": lists " + std::to_string(scores.size()) +
                          " score(s) for " + std::to_string(frame_count) + " frame(s)");
  }
  return scores;
}

void run_refine(const Manifest& manifest, const fs::path& combined_root, const fs::path& out_root,
                double tau_track, int jobs) {
  for_each_pair(manifest, "refine", jobs, [&](const ExpressionKey& key, const VideoEntry& video) {
    const MaskTrack combined = read_pair(combined_root, key, video);
    const std::vector<double> scores = read_combined_scores(combined_root, key, video.frame_count);
    const PromptSelection prompt = select_prompt(combined, scores);
    const MaskTrack refined = propagate(prompt, combined, tau_track);
    write_track(out_root, refined);
    detail::write_json_file(track_directory(out_root, key.video_id, key.expression_id) / kPromptFilename,
                            json{{"format", "rvosfuse-prompt"},
                                 {"version", 1},
                                 {"video_id", key.video_id},
                                 {"expression_id", key.expression_id},
                                 {"frame_index", prompt.frame_index},
                                 {"score", prompt.score},
                                 {"tau_track", tau_track}});
  });
}

void run_fuse(const Manifest& manifest, const fs::path& refined_root, const fs::path& combined_root,
              const fs::path& out_root, const FusionConfig& config, int jobs) {
  config.validate();
  for_each_pair(manifest, "fuse", jobs, [&](const ExpressionKey& key, const VideoEntry& video) {
    const MaskTrack refined = read_pair(refined_root, key, video);
    const MaskTrack detector = read_pair(combined_root, key, video);
    write_track(out_root, cmf_track(refined, detector, config));
  });
}

PipelineResult run_pipeline(const PipelineRun& run) {
  const fs::path out = normalized(run.output_root);
  std::vector<fs::path> inputs = {run.corpus_root, run.detector_root};
  if (run.refiner_root) inputs.push_back(*run.refiner_root);
  for (const auto& in : inputs) {
    if (normalized(in) == out) {
      throw ValidationError("output root " + run.output_root.string() +
                            " must differ from input root " + in.string());
    }
  }
  run.settings.fusion.validate();

  const Manifest manifest = load_manifest(run.corpus_root / kManifestFilename);
  const fs::path combined = run.output_root / "combined";
  const fs::path fused = run.output_root / "fused";

  detail::write_text_file(run.output_root / "config.json", settings_to_json(run.settings));
  run_combine(manifest, run.detector_root, combined, run.settings.fusion.sigma, run.jobs);

  fs::path refined;
  if (run.refiner_root) {
    refined = *run.refiner_root;
  } else {
    refined = run.output_root / "refined";
    run_refine(manifest, combined, refined, run.settings.tau_track, run.jobs);
  }
  run_fuse(manifest, refined, combined, fused, run.settings.fusion, run.jobs);

  PipelineResult result;
  result.tracks = manifest.keys().size();
  if (manifest.has_ground_truth()) {
    EvalReport report;
    try {
      report = eval_corpus(manifest, fused, run.settings, run.jobs);
    } catch (const Error& e) {
      throw_error(e.kind(), std::string("stage 'eval': ") + e.what());
    }
    write_report(report, run.output_root / "report.json");
    detail::write_text_file(run.output_root / "report.txt",
                            render_table({table_row(to_string(run.settings.fusion.mode), report)}));
    result.report = std::move(report);
  }
  return result;
}

}  // namespace rvosfuse
