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

// Python bindings. Masks cross the boundary as 2-D uint8 arrays (H, W) and
// tracks as 3-D arrays (T, H, W); any nonzero value is foreground.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "rvosfuse/candidates.hpp"
#include "rvosfuse/errors.hpp"
#include "rvosfuse/fusion.hpp"
#include "rvosfuse/manifest.hpp"
#include "rvosfuse/metrics.hpp"
#include "rvosfuse/pipeline.hpp"
#include "rvosfuse/refiner.hpp"
#include "rvosfuse/report.hpp"
#include "rvosfuse/rle.hpp"
#include "rvosfuse/scene.hpp"

namespace py = pybind11;
namespace fs = std::filesystem;
using namespace rvosfuse;

namespace {

using MaskArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

BinaryMask to_mask(const MaskArray& a) {
  if (a.ndim() != 2) throw ShapeError("expected a 2-D mask array, got " + std::to_string(a.ndim()) + "-D");
  const int h = static_cast<int>(a.shape(0));
  const int w = static_cast<int>(a.shape(1));
  std::vector<std::uint8_t> bits(a.data(), a.data() + a.size());
  return BinaryMask(w, h, std::move(bits));
}

py::array_t<std::uint8_t> to_array(const BinaryMask& m) {
  py::array_t<std::uint8_t> out({m.height(), m.width()});
  std::memcpy(out.mutable_data(), m.bits().data(), m.pixel_count());
  return out;
}

MaskTrack to_track(const MaskArray& a) {
  if (a.ndim() != 3) throw ShapeError("expected a 3-D track array (T, H, W), got " + std::to_string(a.ndim()) + "-D");
  const auto t = static_cast<std::size_t>(a.shape(0));
  const int h = static_cast<int>(a.shape(1));
  const int w = static_cast<int>(a.shape(2));
  MaskTrack track{"", "", {}};
  const std::size_t plane = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  for (std::size_t i = 0; i < t; ++i) {
    const std::uint8_t* p = a.data() + i * plane;
    track.frames.emplace_back(w, h, std::vector<std::uint8_t>(p, p + plane));
  }
  return track;
}

py::array_t<std::uint8_t> to_array(const MaskTrack& track) {
  if (track.frames.empty()) return py::array_t<std::uint8_t>(std::vector<py::ssize_t>{0, 0, 0});
  const auto& f0 = track.frames.front();
  py::array_t<std::uint8_t> out({static_cast<py::ssize_t>(track.frames.size()),
                                 static_cast<py::ssize_t>(f0.height()), static_cast<py::ssize_t>(f0.width())});
  std::uint8_t* dst = out.mutable_data();
  for (const auto& f : track.frames) {
    std::memcpy(dst, f.bits().data(), f.pixel_count());
    dst += f.pixel_count();
  }
  return out;
}

py::dict rle_to_dict(const RleMask& r) {
  py::dict d;
  d["size"] = py::make_tuple(r.height, r.width);
  d["counts"] = r.counts;
  return d;
}

RleMask rle_from_dict(const py::dict& d) {
  const auto size = d["size"].cast<std::vector<int>>();
  if (size.size() != 2) throw ValidationError("rle 'size' must be [height, width]");
  return {size[1], size[0], d["counts"].cast<std::vector<std::uint64_t>>()};
}

ScoredCandidateSet to_candidate_set(const std::vector<std::pair<MaskArray, double>>& cands) {
  ScoredCandidateSet set{0, {}};
  for (const auto& [m, s] : cands) set.candidates.push_back({to_mask(m), s});
  return set;
}

py::dict record_to_dict(const EvalRecord& r) {
  py::dict d;
  d["video_id"] = r.video_id;
  d["expression_id"] = r.expression_id;
  d["per_frame_j"] = r.per_frame_j;
  d["per_frame_f"] = r.per_frame_f;
  d["mean_j"] = r.mean_j;
  d["mean_f"] = r.mean_f;
  d["jf"] = r.jf;
  return d;
}

FusionConfig make_config(const std::string& mode, double sigma, double area_ratio) {
  FusionConfig cfg;
  cfg.mode = parse_fusion_mode(mode);
  cfg.sigma = sigma;
  cfg.area_ratio = area_ratio;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mask fusion, metrics and synthetic-corpus tools.";

  static py::exception<Error> base_error(m, "RvosfuseError");
  py::register_exception<ShapeError>(m, "ShapeError", base_error.ptr());
  py::register_exception<CorruptEncodingError>(m, "CorruptEncodingError", base_error.ptr());
  py::register_exception<IoError>(m, "IoError", base_error.ptr());
  py::register_exception<FormatError>(m, "FormatError", base_error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base_error.ptr());
  py::register_exception<MissingInputError>(m, "MissingInputError", base_error.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", base_error.ptr());
  py::register_exception<RangeError>(m, "RangeError", base_error.ptr());
  py::register_exception<EmptyTrackError>(m, "EmptyTrackError", base_error.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", base_error.ptr());

  m.attr("DEFAULT_SIGMA") = kDefaultSigma;
  m.attr("DEFAULT_AREA_RATIO") = kDefaultAreaRatio;
  m.attr("DEFAULT_TOLERANCE_FRAC") = kDefaultToleranceFrac;
  m.attr("DEFAULT_TAU_TRACK") = kDefaultTauTrack;

  // Masks.
  m.def("area", [](const MaskArray& a) { return area(to_mask(a)); });
  m.def("iou", [](const MaskArray& a, const MaskArray& b) { return iou(to_mask(a), to_mask(b)); });
  m.def("dilate", [](const MaskArray& a, int radius) { return to_array(dilate(to_mask(a), radius)); },
        py::arg("mask"), py::arg("radius"));
  m.def("boundary_pixels", [](const MaskArray& a) { return to_array(boundary_pixels(to_mask(a))); });
  m.def(
      "connected_components",
      [](const MaskArray& a) {
        py::list out;
        for (const auto& c : connected_components(to_mask(a))) out.append(to_array(c));
        return out;
      },
      "8-connected components, largest first.");
  m.def("encode_rle", [](const MaskArray& a) { return rle_to_dict(encode_rle(to_mask(a))); });
  m.def("decode_rle", [](const py::dict& d) { return to_array(decode_rle(rle_from_dict(d))); });

  // Metrics.
  m.def("region_similarity_j", [](const MaskArray& p, const MaskArray& g) {
    return region_similarity_j(to_mask(p), to_mask(g));
  });
  m.def(
      "boundary_f",
      [](const MaskArray& p, const MaskArray& g, double frac) { return boundary_f(to_mask(p), to_mask(g), frac); },
      py::arg("pred"), py::arg("gt"), py::arg("tolerance_frac") = kDefaultToleranceFrac);
  m.def(
      "boundary_f_at_radius",
      [](const MaskArray& p, const MaskArray& g, int r) { return boundary_f_at_radius(to_mask(p), to_mask(g), r); },
      py::arg("pred"), py::arg("gt"), py::arg("radius"));
  m.def("tolerance_radius", &tolerance_radius, py::arg("width"), py::arg("height"),
        py::arg("tolerance_frac") = kDefaultToleranceFrac);
  m.def(
      "eval_track",
      [](const MaskArray& pred, const MaskArray& gt, double frac) {
        return record_to_dict(eval_track(to_track(pred), to_track(gt), frac));
      },
      py::arg("pred"), py::arg("gt"), py::arg("tolerance_frac") = kDefaultToleranceFrac);

  // Fusion.
  m.def(
      "combine_candidates",
      [](const std::vector<std::pair<MaskArray, double>>& cands, double sigma, int width, int height) {
        const auto out = combine_candidates(to_candidate_set(cands), sigma, width, height);
        return py::make_tuple(to_array(out.mask), out.score);
      },
      py::arg("candidates"), py::arg("sigma"), py::arg("width"), py::arg("height"),
      "Union of the top-scoring candidate and every candidate scoring above sigma. Returns (mask, score).");
  m.def(
      "select_prompt",
      [](const MaskArray& track, const std::vector<double>& scores) {
        const auto p = select_prompt(to_track(track), scores);
        return py::make_tuple(p.frame_index, to_array(p.mask), p.score);
      },
      py::arg("track"), py::arg("scores"), "Returns (frame_index, mask, score).");
  m.def("cmf_condition", &cmf_condition, py::arg("refined_area"), py::arg("detector_area"),
        py::arg("area_ratio") = kDefaultAreaRatio);
  m.def(
      "cmf_frame",
      [](const MaskArray& r, const MaskArray& d, double ratio) { return to_array(cmf_frame(to_mask(r), to_mask(d), ratio)); },
      py::arg("refined"), py::arg("detector"), py::arg("area_ratio") = kDefaultAreaRatio);
  m.def(
      "cmf_track",
      [](const MaskArray& r, const MaskArray& d, const std::string& mode, double ratio) {
        return to_array(cmf_track(to_track(r), to_track(d), make_config(mode, kDefaultSigma, ratio)));
      },
      py::arg("refined"), py::arg("detector"), py::arg("mode") = "per_frame",
      py::arg("area_ratio") = kDefaultAreaRatio);
  m.def(
      "propagate",
      [](std::size_t frame_index, const MaskArray& prompt, const MaskArray& detector, double tau) {
        return to_array(propagate({frame_index, to_mask(prompt), 0.0}, to_track(detector), tau));
      },
      py::arg("frame_index"), py::arg("prompt"), py::arg("detector"), py::arg("tau_track") = kDefaultTauTrack,
      "Deterministic refiner stub: follows the largest prompt component through the detector track.");

  // Synthetic scenes.
  m.def(
      "generate_scene",
      [](std::uint64_t seed, std::size_t frames, int width, int height, int n_referred, int n_distractors,
         int jitter, double spurious_rate, double score_noise, double miss_rate, double vanish_prob) {
        SceneParams p;
        p.seed = seed;
        p.frames = frames;
        p.width = width;
        p.height = height;
        p.n_referred = n_referred;
        p.n_distractors = n_distractors;
        p.noise = {jitter, spurious_rate, score_noise, miss_rate};
        p.vanish_prob = vanish_prob;
        const SyntheticScene s = generate_scene(p);
        py::list cands;
        for (const auto& f : s.candidates.frames) {
          py::list frame;
          for (const auto& c : f.candidates) frame.append(py::make_tuple(to_array(c.mask), c.score));
          cands.append(frame);
        }
        py::dict d;
        d["gt"] = to_array(s.gt_track);
        d["candidates"] = cands;
        return d;
      },
      py::arg("seed"), py::arg("frames") = 8, py::arg("width") = 128, py::arg("height") = 128,
      py::arg("n_referred") = 1, py::arg("n_distractors") = 0, py::arg("jitter") = 0,
      py::arg("spurious_rate") = 0.0, py::arg("score_noise") = 0.0, py::arg("miss_rate") = 0.0,
      py::arg("vanish_prob") = 0.0,
      "Returns {'gt': (T, H, W) array, 'candidates': per-frame lists of (mask, score)}.");
  m.def(
      "write_synthetic_corpus",
      [](const fs::path& root, const std::string& config_json) {
        write_synthetic_corpus(corpus_params_from_json(config_json), root);
      },
      py::arg("root"), py::arg("config_json") = "{}",
      "Writes manifest, ground truth and detector candidates. Config keys match `rvosfuse synth --config`.");

  // Corpus-level operations.
  m.def(
      "load_manifest",
      [](const fs::path& path) {
        const Manifest man = load_manifest(path);
        py::list keys;
        for (const auto& k : man.keys()) keys.append(py::make_tuple(k.video_id, k.expression_id));
        py::dict d;
        d["videos"] = man.videos.size();
        d["expressions"] = keys;
        d["has_ground_truth"] = man.has_ground_truth();
        return d;
      },
      py::arg("path"), "Validates a manifest and returns a summary.");
  m.def(
      "run_pipeline",
      [](const fs::path& corpus, const fs::path& detector, const fs::path& out, const std::string& mode,
         double sigma, double area_ratio, double tolerance_frac, double tau_track, int jobs,
         std::optional<fs::path> refiner) -> py::object {
        PipelineRun run;
        run.corpus_root = corpus;
        run.detector_root = detector;
        run.refiner_root = refiner;
        run.output_root = out;
        run.settings.fusion = make_config(mode, sigma, area_ratio);
        run.settings.tolerance_frac = tolerance_frac;
        run.settings.tau_track = tau_track;
        run.jobs = jobs;
        PipelineResult result;
        {
          py::gil_scoped_release release;
          result = run_pipeline(run);
        }
        if (!result.report) return py::none();
        py::module_ json = py::module_::import("json");
        return json.attr("loads")(report_to_json(*result.report));
      },
      py::arg("corpus"), py::arg("detector"), py::arg("out"), py::arg("mode") = "per_frame",
      py::arg("sigma") = kDefaultSigma, py::arg("area_ratio") = kDefaultAreaRatio,
      py::arg("tolerance_frac") = kDefaultToleranceFrac, py::arg("tau_track") = kDefaultTauTrack,
      py::arg("jobs") = 1, py::arg("refiner") = py::none(),
      "combine -> refine -> fuse -> eval. Returns the report as a dict, or None without ground truth.");
}
