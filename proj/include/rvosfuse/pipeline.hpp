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
#include <vector>

#include "rvosfuse/manifest.hpp"
#include "rvosfuse/metrics.hpp"

namespace rvosfuse {

/// Each stage reads and writes the interchange layout
/// `<root>/<video_id>/<expression_id>/<frame>.png`, so any stage can be run
/// on its own or replaced by externally produced tracks.
///
/// Failures are rethrown with the stage name and (video, expression) pair
/// prefixed to the message; the error kind is preserved.

/// Detector candidates -> combined tracks plus `scores.json` per pair.
void run_combine(const Manifest& manifest, const std::filesystem::path& detector_root,
                 const std::filesystem::path& out_root, double sigma, int jobs = 1);

/// Combined tracks -> refiner-stub tracks plus `prompt.json` per pair.
void run_refine(const Manifest& manifest, const std::filesystem::path& combined_root,
                const std::filesystem::path& out_root, double tau_track, int jobs = 1);

/// Refined + combined tracks -> fused tracks.
void run_fuse(const Manifest& manifest, const std::filesystem::path& refined_root,
              const std::filesystem::path& combined_root, const std::filesystem::path& out_root,
              const FusionConfig& config, int jobs = 1);

/// Per-frame combined scores written next to a combined track.
std::vector<double> read_combined_scores(const std::filesystem::path& combined_root,
                                         const ExpressionKey& key, std::size_t frame_count);

struct PipelineRun {
  std::filesystem::path corpus_root;  // holds manifest.json
  std::filesystem::path detector_root;
  std::optional<std::filesystem::path> refiner_root;  // stub runs when absent
  EvalSettings settings;
  std::filesystem::path output_root;
  int jobs = 1;
};

struct PipelineResult {
  std::optional<EvalReport> report;  // set when the manifest has ground truth
  std::size_t tracks = 0;
};

/// combine -> refine (or external refiner tracks) -> fuse -> eval.
///
/// Writes `combined/`, `refined/` (stub only), `fused/`, `config.json` and,
/// with ground truth, `report.json` and `report.txt` under the output root.
/// The output root must differ from every input root (ValidationError).
PipelineResult run_pipeline(const PipelineRun& run);

}  // namespace rvosfuse
