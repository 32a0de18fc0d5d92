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

#include "rvosfuse/refiner.hpp"

#include <optional>

#include "rvosfuse/errors.hpp"

namespace rvosfuse {

namespace {

BinaryMask follow(const BinaryMask& detector_frame, const BinaryMask& previous, double tau) {
  const auto components = connected_components(detector_frame);
  const BinaryMask* best = nullptr;
  double best_iou = -1.0;
  for (const auto& c : components) {
    const double v = iou(c, previous);
    if (v > best_iou) {
      best_iou = v;
      best = &c;
    }
  }
  if (best == nullptr || best_iou < tau) return previous;
  return *best;
}

}  // namespace

MaskTrack propagate(const PromptSelection& prompt, const MaskTrack& detector_track,
                    double tau_track) {
  const std::size_t n = detector_track.frames.size();
  if (n == 0) {
    throw EmptyTrackError("refiner got an empty detector track " + detector_track.video_id + "/" +
                          detector_track.expression_id);
  }
  if (prompt.frame_index >= n) {
    throw RangeError("prompt frame " + std::to_string(prompt.frame_index) +
                     " outside track of " + std::to_string(n) + " frames");
  }
  if (!(tau_track >= 0.0 && tau_track <= 1.0)) {
    throw ParameterError("tau_track must lie in [0,1], got " + std::to_string(tau_track));
  }
  detector_track.validate();
  require_same_shape(prompt.mask, detector_track.frames[prompt.frame_index], "prompt mask");

  MaskTrack out{detector_track.video_id, detector_track.expression_id, {}};
  std::vector<std::optional<BinaryMask>> refined(n);

  auto components = connected_components(prompt.mask);
  refined[prompt.frame_index] = components.empty()
                                    ? BinaryMask(prompt.mask.width(), prompt.mask.height())
                                    : std::move(components.front());

  for (std::size_t t = prompt.frame_index + 1; t < n; ++t) {
    refined[t] = follow(detector_track.frames[t], *refined[t - 1], tau_track);
  }
  for (std::size_t t = prompt.frame_index; t-- > 0;) {
    refined[t] = follow(detector_track.frames[t], *refined[t + 1], tau_track);
  }

  out.frames.reserve(n);
  for (auto& m : refined) out.frames.push_back(std::move(*m));
  return out;
}

}  // namespace rvosfuse
