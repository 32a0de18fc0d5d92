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

#include "rvosfuse/fusion.hpp"
#include "rvosfuse/track.hpp"

namespace rvosfuse {

inline constexpr double kDefaultTauTrack = 0.1;

/// Deterministic stand-in for a prompt-driven video refiner.
///
/// This is NOT a segmentation model. It reproduces, on purpose and in its
/// worst form, the failure where a refiner seeded with a multi-object mask
/// follows only one object:
///
///  * the prompt frame keeps only the largest connected component of the
///    prompt mask;
///  * sweeping forward, then backward, from the prompt frame, each frame takes
///    the detector component with the highest IoU against the neighbouring
///    refined frame (first component wins ties);
///  * when no component reaches `tau_track` IoU (or the detector frame is
///    empty) the neighbouring refined mask is carried over unchanged.
///
/// Throws EmptyTrackError for an empty detector track, RangeError for a
/// prompt index outside the track, ParameterError for tau outside [0,1].
MaskTrack propagate(const PromptSelection& prompt, const MaskTrack& detector_track,
                    double tau_track = kDefaultTauTrack);

}  // namespace rvosfuse
