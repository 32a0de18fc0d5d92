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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "rvosfuse/errors.hpp"
#include "rvosfuse/fusion.hpp"

using namespace rvosfuse;
using namespace rvosfuse::testing;

namespace {

constexpr int kW = 10;
constexpr int kH = 10;

ScoredCandidateSet three_blocks(double s0, double s1, double s2) {
  return {0,
          {{block(kW, kH, 0, 1, 0, 1), s0},
           {block(kW, kH, 4, 5, 4, 5), s1},
           {block(kW, kH, 8, 9, 8, 9), s2}}};
}

// First `n` pixels in row-major order.
BinaryMask first_pixels(int w, int h, int n) {
  BinaryMask m(w, h);
  for (int i = 0; i < n; ++i) m.set(i / w, i % w);
  return m;
}

// Last `n` pixels, disjoint from first_pixels when the counts fit.
BinaryMask last_pixels(int w, int h, int n) {
  BinaryMask m(w, h);
  const int total = w * h;
  for (int i = total - n; i < total; ++i) m.set(i / w, i % w);
  return m;
}

PixelSet oracle_combine(const ScoredCandidateSet& set, double sigma) {
  PixelSet out;
  if (set.candidates.empty()) return out;
  double top = set.candidates[0].score;
  std::size_t top_index = 0;
  for (std::size_t k = 0; k < set.candidates.size(); ++k) {
    if (set.candidates[k].score > top) {
      top = set.candidates[k].score;
      top_index = k;
    }
  }
  for (std::size_t k = 0; k < set.candidates.size(); ++k) {
    if (k == top_index || set.candidates[k].score > sigma) {
      out = set_union(out, to_set(set.candidates[k].mask));
    }
  }
  return out;
}

ScoredCandidateSet random_set(std::mt19937_64& rng, int w, int h) {
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  ScoredCandidateSet set{0, {}};
  const int n = count(rng);
  for (int k = 0; k < n; ++k) set.candidates.push_back({random_mask(rng, w, h, 0.1), score(rng)});
  return set;
}

}  // namespace

// --- candidate combination --------------------------------------------------

TEST(Combine, KeepsTopAndAboveThreshold) {
  const auto out = combine_candidates(three_blocks(0.9, 0.3, 0.1), 0.275, kW, kH);
  EXPECT_EQ(out.mask, mask_union(block(kW, kH, 0, 1, 0, 1), block(kW, kH, 4, 5, 4, 5)));
  EXPECT_EQ(out.score, 0.9);
}

TEST(Combine, AllBelowThresholdKeepsTopOnly) {
  const auto out = combine_candidates(three_blocks(0.1, 0.2, 0.05), 0.275, kW, kH);
  EXPECT_EQ(out.mask, block(kW, kH, 4, 5, 4, 5));
  EXPECT_EQ(out.score, 0.2);
}

TEST(Combine, ThresholdIsStrict) {
  const auto out = combine_candidates(three_blocks(0.9, 0.275, 0.1), 0.275, kW, kH);
  EXPECT_EQ(out.mask, block(kW, kH, 0, 1, 0, 1));
}

TEST(Combine, EmptyFrame) {
  const auto out = combine_candidates({3, {}}, 0.275, kW, kH);
  EXPECT_TRUE(out.mask.empty());
  EXPECT_EQ(out.mask.width(), kW);
  EXPECT_EQ(out.score, 0.0);
}

TEST(Combine, ShapeMismatchRejected) {
  ScoredCandidateSet set{0, {{BinaryMask(3, 3), 0.5}}};
  EXPECT_THROW(combine_candidates(set, 0.275, kW, kH), ShapeError);
}

TEST(Combine, MatchesOracleAndInvariants) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> sig(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const ScoredCandidateSet set = random_set(rng, 12, 9);
    const double s1 = sig(rng);
    const double s2 = sig(rng);
    const double lo = std::min(s1, s2);
    const double hi = std::max(s1, s2);
    const auto a = combine_candidates(set, lo, 12, 9);
    const auto b = combine_candidates(set, hi, 12, 9);
    ASSERT_EQ(to_set(a.mask), oracle_combine(set, lo));
    ASSERT_TRUE(is_subset(b.mask, a.mask));
    if (!set.candidates.empty()) {
      double top = 0.0;
      for (const auto& c : set.candidates) top = std::max(top, c.score);
      ASSERT_EQ(a.score, top);
      for (const auto& c : set.candidates) {
        if (c.score == top) ASSERT_TRUE(is_subset(c.mask, b.mask));
      }
    }
  }
}

TEST(Combine, TrackKeepsIdsAndScores) {
  CandidateTrack ct{"v", "e", kW, kH, {three_blocks(0.9, 0.3, 0.1), {1, {}}}};
  const auto out = combine_track(ct, 0.275);
  EXPECT_EQ(out.track.video_id, "v");
  EXPECT_EQ(out.track.expression_id, "e");
  EXPECT_EQ(out.scores, (std::vector<double>{0.9, 0.0}));
  EXPECT_TRUE(out.track.frames[1].empty());
}

// --- prompt selection -------------------------------------------------------

TEST(Prompt, ArgmaxFrame) {
  MaskTrack t{"v", "e", {block(4, 4, 0, 0, 0, 0), block(4, 4, 1, 1, 1, 1), block(4, 4, 2, 2, 2, 2)}};
  const std::vector<double> scores{0.2, 0.9, 0.5};
  const auto p = select_prompt(t, scores);
  EXPECT_EQ(p.frame_index, 1u);
  EXPECT_EQ(p.mask, t.frames[1]);
  EXPECT_EQ(p.score, 0.9);
}

TEST(Prompt, TiesGoToEarliestFrame) {
  MaskTrack t{"v", "e", {block(4, 4, 0, 0, 0, 0), block(4, 4, 1, 1, 1, 1), BinaryMask(4, 4)}};
  const std::vector<double> scores{0.9, 0.9, 0.1};
  EXPECT_EQ(select_prompt(t, scores).frame_index, 0u);
}

TEST(Prompt, AllZeroScoresPickFirstEmptyFrame) {
  MaskTrack t{"v", "e", {BinaryMask(4, 4), BinaryMask(4, 4)}};
  const std::vector<double> scores{0.0, 0.0};
  const auto p = select_prompt(t, scores);
  EXPECT_EQ(p.frame_index, 0u);
  EXPECT_TRUE(p.mask.empty());
}

TEST(Prompt, Errors) {
  MaskTrack empty{"v", "e", {}};
  EXPECT_THROW(select_prompt(empty, std::vector<double>{}), EmptyTrackError);
  MaskTrack t{"v", "e", {BinaryMask(4, 4)}};
  EXPECT_THROW(select_prompt(t, std::vector<double>{0.1, 0.2}), ShapeError);
}

// --- conditional fusion -----------------------------------------------------

TEST(Cmf, SmallRefinedIsUnioned) {
  const BinaryMask ms = first_pixels(10, 10, 10);
  const BinaryMask mr = last_pixels(10, 10, 30);
  EXPECT_EQ(area(cmf_frame(ms, mr, 2.0 / 3.0)), 40u);
}

TEST(Cmf, ComparableRefinedIsKept) {
  const BinaryMask ms = first_pixels(10, 10, 30);
  const BinaryMask mr = last_pixels(10, 10, 30);
  EXPECT_EQ(cmf_frame(ms, mr, 2.0 / 3.0), ms);
}

TEST(Cmf, EmptyRefinedTakesDetector) {
  const BinaryMask mr = last_pixels(10, 10, 7);
  EXPECT_EQ(cmf_frame(BinaryMask(10, 10), mr, 2.0 / 3.0), mr);
}

TEST(Cmf, BothEmptyStaysEmpty) {
  EXPECT_TRUE(cmf_frame(BinaryMask(5, 5), BinaryMask(5, 5), 2.0 / 3.0).empty());
}

TEST(Cmf, ExactTwoThirdsBoundary) {
  EXPECT_FALSE(cmf_condition(2, 3, kDefaultAreaRatio));
  EXPECT_TRUE(cmf_condition(1, 3, kDefaultAreaRatio));
  for (std::size_t ar = 0; ar <= 3000; ++ar) {
    for (std::size_t as : {2 * ar / 3, 2 * ar / 3 + 1, (2 * ar + 2) / 3}) {
      ASSERT_EQ(cmf_condition(as, ar, kDefaultAreaRatio), 3 * as < 2 * ar) << as << "/" << ar;
    }
  }
}

TEST(Cmf, ShapeMismatchRejected) {
  EXPECT_THROW(cmf_frame(BinaryMask(4, 4), BinaryMask(4, 5), 0.5), ShapeError);
  MaskTrack a{"v", "e", {BinaryMask(4, 4)}};
  MaskTrack b{"v", "e", {BinaryMask(4, 4), BinaryMask(4, 4)}};
  EXPECT_THROW(cmf_track(a, b, {}), ShapeError);
}

TEST(Cmf, ConfigValidation) {
  MaskTrack a{"v", "e", {BinaryMask(4, 4)}};
  FusionConfig bad;
  bad.area_ratio = 0.0;
  EXPECT_THROW(cmf_track(a, a, bad), ParameterError);
  bad = {};
  bad.sigma = 1.5;
  EXPECT_THROW(bad.validate(), ParameterError);
  EXPECT_THROW(parse_fusion_mode("sometimes"), ParameterError);
  for (auto m : {FusionMode::kPerFrame, FusionMode::kPerVideo, FusionMode::kRefinedOnly,
                 FusionMode::kDetectorOnly, FusionMode::kAlwaysUnion}) {
    EXPECT_EQ(parse_fusion_mode(to_string(m)), m);
  }
}

namespace {

// Frame 0: refined is much smaller than detector. Frame 1: comparable.
struct TwoFrameCase {
  MaskTrack refined{"v", "e", {first_pixels(10, 10, 5), first_pixels(10, 10, 40)}};
  MaskTrack detector{"v", "e", {last_pixels(10, 10, 30), last_pixels(10, 10, 40)}};
};

MaskTrack run(const TwoFrameCase& c, FusionMode mode, double ratio = kDefaultAreaRatio) {
  FusionConfig cfg;
  cfg.mode = mode;
  cfg.area_ratio = ratio;
  return cmf_track(c.refined, c.detector, cfg);
}

}  // namespace

TEST(CmfTrack, Modes) {
  const TwoFrameCase c;
  const auto pf = run(c, FusionMode::kPerFrame);
  EXPECT_EQ(area(pf.frames[0]), 35u);
  EXPECT_EQ(pf.frames[1], c.refined.frames[1]);

  // Totals 45 vs 70: 45 < 46.67, so every frame is unioned.
  const auto pv = run(c, FusionMode::kPerVideo);
  EXPECT_EQ(area(pv.frames[0]), 35u);
  EXPECT_EQ(area(pv.frames[1]), 80u);

  EXPECT_EQ(run(c, FusionMode::kRefinedOnly).frames, c.refined.frames);
  EXPECT_EQ(run(c, FusionMode::kDetectorOnly).frames, c.detector.frames);
  const auto au = run(c, FusionMode::kAlwaysUnion);
  EXPECT_EQ(area(au.frames[1]), 80u);
}

TEST(CmfTrack, PerVideoKeepsRefinedWhenTotalsComparable) {
  TwoFrameCase c;
  c.refined.frames[1] = first_pixels(10, 10, 50);  // totals 55 vs 70
  EXPECT_EQ(run(c, FusionMode::kPerVideo).frames, c.refined.frames);
}

TEST(CmfTrack, RatioLimits) {
  const TwoFrameCase c;
  EXPECT_EQ(run(c, FusionMode::kPerFrame, 1e-9).frames, c.refined.frames);
  EXPECT_EQ(run(c, FusionMode::kPerFrame, 1e6).frames, run(c, FusionMode::kAlwaysUnion).frames);
  EXPECT_EQ(run(c, FusionMode::kPerVideo, 1e6).frames, run(c, FusionMode::kAlwaysUnion).frames);
}

TEST(CmfTrack, EmptyTrackPassesThrough) {
  MaskTrack empty{"v", "e", {}};
  EXPECT_TRUE(cmf_track(empty, empty, {}).frames.empty());
}

TEST(CmfTrack, FuzzedInvariants) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_real_distribution<double> ratio(0.05, 3.0);
  for (int i = 0; i < 300; ++i) {
    const int n = len(rng);
    MaskTrack r{"v", "e", {}};
    MaskTrack d{"v", "e", {}};
    for (int t = 0; t < n; ++t) {
      r.frames.push_back(random_mask(rng, 9, 7, 0.2));
      d.frames.push_back(random_mask(rng, 9, 7, 0.4));
    }
    for (auto mode : {FusionMode::kPerFrame, FusionMode::kPerVideo}) {
      FusionConfig cfg;
      cfg.mode = mode;
      cfg.area_ratio = ratio(rng);
      const MaskTrack out = cmf_track(r, d, cfg);
      ASSERT_EQ(out.frame_count(), static_cast<std::size_t>(n));
      for (int t = 0; t < n; ++t) {
        ASSERT_TRUE(is_subset(r.frames[t], out.frames[t]));
        const BinaryMask u = mask_union(r.frames[t], d.frames[t]);
        ASSERT_TRUE(out.frames[t] == r.frames[t] || out.frames[t] == u);
      }
      // Applying the same permutation to both inputs permutes the per-frame output.
      if (mode == FusionMode::kPerFrame) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        MaskTrack rp{"v", "e", {}};
        MaskTrack dp{"v", "e", {}};
        for (int t = 0; t < n; ++t) {
          rp.frames.push_back(r.frames[perm[t]]);
          dp.frames.push_back(d.frames[perm[t]]);
        }
        const MaskTrack outp = cmf_track(rp, dp, cfg);
        for (int t = 0; t < n; ++t) ASSERT_EQ(outp.frames[t], out.frames[perm[t]]);
      }
    }
  }
}
