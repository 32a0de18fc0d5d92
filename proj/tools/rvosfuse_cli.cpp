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

// rvosfuse command-line tool: synth, combine, refine, fuse, eval, report, run.
//
// Exit codes: 0 success, 2 validation error, 3 missing inputs,
// 4 internal invariant violation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rvosfuse/errors.hpp"
#include "rvosfuse/manifest.hpp"
#include "rvosfuse/metrics.hpp"
#include "rvosfuse/pipeline.hpp"
#include "rvosfuse/report.hpp"
#include "rvosfuse/scene.hpp"

namespace fs = std::filesystem;
using namespace rvosfuse;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitMissing = 3;
constexpr int kExitInternal = 4;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kShape:
    case ErrorKind::kCorruptEncoding:
    case ErrorKind::kFormat:
    case ErrorKind::kValidation:
    case ErrorKind::kParameter:
      return kExitValidation;
    case ErrorKind::kIo:
    case ErrorKind::kMissingInput:
      return kExitMissing;
    case ErrorKind::kRange:
    case ErrorKind::kEmptyTrack:
    case ErrorKind::kInvariant:
      return kExitInternal;
  }
  return kExitInternal;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInputError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// "2/3", "0.6667", ...
double parse_ratio(const std::string& text) {
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const double a = std::stod(num, &used);
    if (used != num.size()) throw std::invalid_argument(text);
    const double b = std::stod(den, &used);
    if (used != den.size() || b == 0.0) throw std::invalid_argument(text);
    return a / b;
  } catch (const std::logic_error&) {
    throw ParameterError("cannot parse ratio '" + text + "' (use a decimal or a fraction like 2/3)");
  }
}

/// Flags shared by the fusion/eval subcommands. Values are applied on top of
/// the defaults and any --config file, and only when given explicitly.
struct SettingsFlags {
  std::string config;
  double sigma = kDefaultSigma;
  std::string ratio = "2/3";
  std::string mode = "per_frame";
  double tolerance_frac = kDefaultToleranceFrac;
  double tau = 0.1;
  CLI::Option* sigma_opt = nullptr;
  CLI::Option* ratio_opt = nullptr;
  CLI::Option* mode_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* tau_opt = nullptr;

  EvalSettings resolve() const {
    EvalSettings s;
    if (!config.empty()) s = settings_from_json(read_text(config), s);
    if (sigma_opt && sigma_opt->count()) s.fusion.sigma = sigma;
    if (ratio_opt && ratio_opt->count()) s.fusion.area_ratio = parse_ratio(ratio);
    if (mode_opt && mode_opt->count()) s.fusion.mode = parse_fusion_mode(mode);
    if (tol_opt && tol_opt->count()) s.tolerance_frac = tolerance_frac;
    if (tau_opt && tau_opt->count()) s.tau_track = tau;
    // Round-trip through the validating parser.
    return settings_from_json(settings_to_json(s));
  }
};

void add_config(CLI::App* app, SettingsFlags& f) {
  app->add_option("--config", f.config, "JSON config overriding the defaults (sigma, area_ratio, "
                                        "mode, tolerance_frac, tau_track)");
}
void add_sigma(CLI::App* app, SettingsFlags& f) {
  f.sigma_opt = app->add_option("--sigma", f.sigma, "Candidate score threshold")
                    ->default_str("0.275");
}
void add_fusion(CLI::App* app, SettingsFlags& f) {
  f.ratio_opt = app->add_option("--ratio", f.ratio, "Area ratio for conditional fusion")
                    ->default_str("2/3");
  f.mode_opt = app->add_option("--mode", f.mode,
                               "per_frame | per_video | refined_only | detector_only | always_union")
                   ->default_str("per_frame");
}
void add_tolerance(CLI::App* app, SettingsFlags& f) {
  f.tol_opt = app->add_option("--tolerance-frac", f.tolerance_frac,
                              "Boundary tolerance as a fraction of the image diagonal")
                  ->default_str("0.008");
}
void add_tau(CLI::App* app, SettingsFlags& f) {
  f.tau_opt = app->add_option("--tau", f.tau, "Refiner-stub carry-over IoU threshold")
                  ->default_str("0.1");
}

Manifest manifest_at(const fs::path& corpus) { return load_manifest(corpus / kManifestFilename); }

void log(const std::string& line) { std::cerr << "rvosfuse: " << line << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mask-stream fusion and J/F evaluation for referring video object segmentation"};
  app.require_subcommand(1);
  int jobs = 1;

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic corpus");
  std::string synth_out;
  std::string synth_config;
  CorpusParams corpus_params;
  corpus_params.scene_count = 20;
  synth->add_option("--out", synth_out, "Corpus root to create")->required();
  synth->add_option("--config", synth_config, "JSON generator config");
  auto* o_seed = synth->add_option("--seed", corpus_params.scene.seed, "Base seed (scene i uses seed+i)");
  auto* o_scenes = synth->add_option("--scenes", corpus_params.scene_count, "Number of scenes")->default_str("20");
  auto* o_frames = synth->add_option("--frames", corpus_params.scene.frames, "Frames per scene")->default_str("8");
  auto* o_width = synth->add_option("--width", corpus_params.scene.width)->default_str("128");
  auto* o_height = synth->add_option("--height", corpus_params.scene.height)->default_str("128");
  auto* o_ref = synth->add_option("--referred", corpus_params.scene.n_referred, "Referred objects per scene")->default_str("1");
  auto* o_dis = synth->add_option("--distractors", corpus_params.scene.n_distractors)->default_str("0");
  auto* o_jit = synth->add_option("--jitter", corpus_params.scene.noise.jitter_radius, "Mask jitter radius")->default_str("0");
  auto* o_spur = synth->add_option("--spurious-rate", corpus_params.scene.noise.spurious_rate)->default_str("0");
  auto* o_snoise = synth->add_option("--score-noise", corpus_params.scene.noise.score_noise)->default_str("0");
  auto* o_miss = synth->add_option("--miss-rate", corpus_params.scene.noise.miss_rate)->default_str("0");
  auto* o_vanish = synth->add_option("--vanish-prob", corpus_params.scene.vanish_prob)->default_str("0");
  auto* o_prefix = synth->add_option("--prefix", corpus_params.video_prefix, "Video id prefix")->default_str("synth");

  // combine
  auto* combine = app.add_subcommand("combine", "Threshold-combine detector candidates per frame");
  std::string c_corpus, c_detector, c_out;
  SettingsFlags c_flags;
  combine->add_option("--corpus", c_corpus, "Corpus root (manifest.json)")->required();
  combine->add_option("--detector", c_detector, "Detector candidates root")->required();
  combine->add_option("--out", c_out, "Combined track root")->required();
  add_sigma(combine, c_flags);
  add_config(combine, c_flags);
  combine->add_option("--jobs", jobs, "Parallel workers")->default_str("1");

  // refine
  auto* refine = app.add_subcommand("refine", "Run the deterministic refiner stub on combined tracks");
  std::string r_corpus, r_combined, r_out;
  SettingsFlags r_flags;
  refine->add_option("--corpus", r_corpus)->required();
  refine->add_option("--combined", r_combined, "Combined track root")->required();
  refine->add_option("--out", r_out, "Refined track root")->required();
  add_tau(refine, r_flags);
  add_config(refine, r_flags);
  refine->add_option("--jobs", jobs)->default_str("1");

  // fuse
  auto* fuse = app.add_subcommand("fuse", "Conditional mask fusion of refined and combined tracks");
  std::string f_corpus, f_refined, f_combined, f_out;
  SettingsFlags f_flags;
  fuse->add_option("--corpus", f_corpus)->required();
  fuse->add_option("--refined", f_refined)->required();
  fuse->add_option("--combined", f_combined)->required();
  fuse->add_option("--out", f_out)->required();
  add_fusion(fuse, f_flags);
  add_config(fuse, f_flags);
  fuse->add_option("--jobs", jobs)->default_str("1");

  // eval
  auto* eval = app.add_subcommand("eval", "Score prediction roots against ground truth");
  std::string e_corpus, e_out;
  std::vector<std::string> e_preds, e_labels;
  SettingsFlags e_flags;
  eval->add_option("--corpus", e_corpus)->required();
  eval->add_option("--pred", e_preds, "Prediction root (repeatable)")->required();
  eval->add_option("--label", e_labels, "Label per --pred (default: directory name)");
  eval->add_option("--out", e_out, "Directory for <label>.json reports and table.txt")->required();
  add_tolerance(eval, e_flags);
  add_fusion(eval, e_flags);
  add_sigma(eval, e_flags);
  add_tau(eval, e_flags);
  add_config(eval, e_flags);
  eval->add_option("--jobs", jobs)->default_str("1");

  // report
  auto* report = app.add_subcommand("report", "Render report JSON files as a comparison table");
  std::vector<std::string> rep_inputs, rep_labels;
  std::string rep_out;
  report->add_option("reports", rep_inputs, "Report JSON files")->required();
  report->add_option("--label", rep_labels, "Row label per report (default: file stem)");
  report->add_option("--out", rep_out, "Write the table here instead of standard output");

  // run
  auto* run = app.add_subcommand("run", "combine -> refine -> fuse -> eval");
  std::string u_corpus, u_detector, u_refiner, u_out;
  SettingsFlags u_flags;
  run->add_option("--corpus", u_corpus)->required();
  run->add_option("--detector", u_detector)->required();
  run->add_option("--refiner", u_refiner, "External refined tracks (default: refiner stub)");
  run->add_option("--out", u_out)->required();
  add_sigma(run, u_flags);
  add_fusion(run, u_flags);
  add_tolerance(run, u_flags);
  add_tau(run, u_flags);
  add_config(run, u_flags);
  run->add_option("--jobs", jobs, "Parallel workers")->default_str("1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (jobs < 1) throw ParameterError("--jobs must be at least 1");

    if (synth->parsed()) {
      CorpusParams params = corpus_params;
      if (!synth_config.empty()) {
        params = corpus_params_from_json(read_text(synth_config), CorpusParams{{}, 20, "synth"});
        // Explicit flags still win over the file.
        if (o_seed->count()) params.scene.seed = corpus_params.scene.seed;
        if (o_scenes->count()) params.scene_count = corpus_params.scene_count;
        if (o_frames->count()) params.scene.frames = corpus_params.scene.frames;
        if (o_width->count()) params.scene.width = corpus_params.scene.width;
        if (o_height->count()) params.scene.height = corpus_params.scene.height;
        if (o_ref->count()) params.scene.n_referred = corpus_params.scene.n_referred;
        if (o_dis->count()) params.scene.n_distractors = corpus_params.scene.n_distractors;
        if (o_jit->count()) params.scene.noise.jitter_radius = corpus_params.scene.noise.jitter_radius;
        if (o_spur->count()) params.scene.noise.spurious_rate = corpus_params.scene.noise.spurious_rate;
        if (o_snoise->count()) params.scene.noise.score_noise = corpus_params.scene.noise.score_noise;
        if (o_miss->count()) params.scene.noise.miss_rate = corpus_params.scene.noise.miss_rate;
        if (o_vanish->count()) params.scene.vanish_prob = corpus_params.scene.vanish_prob;
        if (o_prefix->count()) params.video_prefix = corpus_params.video_prefix;
      }
      write_synthetic_corpus(params, synth_out);
      log("wrote " + std::to_string(params.scene_count) + " synthetic scene(s) to " + synth_out);
    } else if (combine->parsed()) {
      const EvalSettings s = c_flags.resolve();
      const Manifest m = manifest_at(c_corpus);
      run_combine(m, c_detector, c_out, s.fusion.sigma, jobs);
      log("combined " + std::to_string(m.keys().size()) + " track(s) into " + c_out);
    } else if (refine->parsed()) {
      const EvalSettings s = r_flags.resolve();
      const Manifest m = manifest_at(r_corpus);
      run_refine(m, r_combined, r_out, s.tau_track, jobs);
      log("refined " + std::to_string(m.keys().size()) + " track(s) into " + r_out);
    } else if (fuse->parsed()) {
      const EvalSettings s = f_flags.resolve();
      const Manifest m = manifest_at(f_corpus);
      run_fuse(m, f_refined, f_combined, f_out, s.fusion, jobs);
      log("fused " + std::to_string(m.keys().size()) + " track(s) into " + f_out + " (mode " +
          to_string(s.fusion.mode) + ")");
    } else if (eval->parsed()) {
      const EvalSettings s = e_flags.resolve();
      if (!e_labels.empty() && e_labels.size() != e_preds.size()) {
        throw ParameterError("give one --label per --pred");
      }
      const Manifest m = manifest_at(e_corpus);
      std::vector<TableRow> rows;
      std::vector<std::pair<std::string, EvalReport>> reports;
      for (std::size_t i = 0; i < e_preds.size(); ++i) {
        const std::string label =
            e_labels.empty() ? fs::path(e_preds[i]).lexically_normal().filename().string() : e_labels[i];
        log("evaluating " + e_preds[i]);
        reports.emplace_back(label, eval_corpus(m, e_preds[i], s, jobs));
        rows.push_back(table_row(label, reports.back().second));
      }
      for (const auto& [label, rep] : reports) write_report(rep, fs::path(e_out) / (label + ".json"));
      std::ofstream(fs::path(e_out) / "table.txt", std::ios::binary) << render_table(rows);
      log("wrote " + std::to_string(reports.size()) + " report(s) to " + e_out);
    } else if (report->parsed()) {
      if (!rep_labels.empty() && rep_labels.size() != rep_inputs.size()) {
        throw ParameterError("give one --label per report");
      }
      std::vector<TableRow> rows;
      for (std::size_t i = 0; i < rep_inputs.size(); ++i) {
        const std::string label =
            rep_labels.empty() ? fs::path(rep_inputs[i]).stem().string() : rep_labels[i];
        rows.push_back(table_row(label, read_report(rep_inputs[i])));
      }
      const std::string table = render_table(rows);
      if (rep_out.empty()) {
        std::cout << table;
      } else {
        std::ofstream out(rep_out, std::ios::binary);
        if (!out) throw IoError("cannot write " + rep_out);
        out << table;
      }
    } else if (run->parsed()) {
      PipelineRun pr;
      pr.corpus_root = u_corpus;
      pr.detector_root = u_detector;
      if (!u_refiner.empty()) pr.refiner_root = fs::path(u_refiner);
      pr.output_root = u_out;
      pr.settings = u_flags.resolve();
      pr.jobs = jobs;
      const PipelineResult result = run_pipeline(pr);
      if (result.report) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "J&F %.2f  J %.2f  F %.2f", result.report->corpus_jf * 100,
                      result.report->corpus_j * 100, result.report->corpus_f * 100);
        log("run complete over " + std::to_string(result.tracks) + " track(s): " + buf);
      } else {
        log("run complete over " + std::to_string(result.tracks) + " track(s); no ground truth");
      }
    }
  } catch (const Error& e) {
    std::cerr << "rvosfuse: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "rvosfuse: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
