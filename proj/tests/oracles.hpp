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

// Brute-force reference implementations used only by the tests. They work
// on plain pixel sets and share no code with the library routines they check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "rvosfuse/mask.hpp"

namespace rvosfuse::testing {

using Pixel = std::pair<int, int>;  // (row, col)
using PixelSet = std::set<Pixel>;

inline PixelSet to_set(const BinaryMask& m) {
  PixelSet s;
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      if (m.at(r, c)) s.insert({r, c});
    }
  }
  return s;
}

inline BinaryMask from_set(int width, int height, const PixelSet& s) {
  BinaryMask m(width, height);
  for (auto [r, c] : s) m.set(r, c);
  return m;
}

inline BinaryMask block(int width, int height, int r0, int r1, int c0, int c1) {
  BinaryMask m(width, height);
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) m.set(r, c);
  }
  return m;
}

/// Bernoulli(density) pixels on a random width x height grid.
inline BinaryMask random_mask(std::mt19937_64& rng, int width, int height, double density) {
  std::bernoulli_distribution fg(density);
  BinaryMask m(width, height);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) m.set(r, c, fg(rng));
  }
  return m;
}

inline BinaryMask random_mask(std::mt19937_64& rng, int max_side) {
  std::uniform_int_distribution<int> side(1, max_side);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  const int w = side(rng);
  const int h = side(rng);
  return random_mask(rng, w, h, density(rng));
}

inline PixelSet set_union(const PixelSet& a, const PixelSet& b) {
  PixelSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

inline PixelSet set_intersection(const PixelSet& a, const PixelSet& b) {
  PixelSet out;
  for (const auto& p : a) {
    if (b.count(p)) out.insert(p);
  }
  return out;
}

inline double oracle_iou(const BinaryMask& a, const BinaryMask& b) {
  const PixelSet sa = to_set(a);
  const PixelSet sb = to_set(b);
  const auto u = set_union(sa, sb).size();
  if (u == 0) return 1.0;
  return static_cast<double>(set_intersection(sa, sb).size()) / static_cast<double>(u);
}

/// Foreground pixels with a 4-neighbour that is background or off-grid.
inline PixelSet oracle_boundary(const BinaryMask& m) {
  const PixelSet s = to_set(m);
  PixelSet out;
  for (auto [r, c] : s) {
    const Pixel nbrs[] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
    for (auto [rr, cc] : nbrs) {
      if (rr < 0 || rr >= m.height() || cc < 0 || cc >= m.width() || !s.count({rr, cc})) {
        out.insert({r, c});
        break;
      }
    }
  }
  return out;
}

inline bool within(const Pixel& p, const Pixel& q, int radius) {
  const long long dr = p.first - q.first;
  const long long dc = p.second - q.second;
  return dr * dr + dc * dc <= static_cast<long long>(radius) * radius;
}

/// Every grid pixel checked against every source pixel.
inline PixelSet oracle_dilate(const BinaryMask& m, int radius) {
  const PixelSet s = to_set(m);
  PixelSet out;
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      for (const auto& q : s) {
        if (within({r, c}, q, radius)) {
          out.insert({r, c});
          break;
        }
      }
    }
  }
  return out;
}

/// Boundary F by explicit distance matching between the two boundary sets.
inline double oracle_boundary_f(const BinaryMask& pred, const BinaryMask& gt, int radius) {
  const PixelSet bp = oracle_boundary(pred);
  const PixelSet bg = oracle_boundary(gt);
  if (bp.empty() && bg.empty()) return 1.0;
  if (bp.empty() || bg.empty()) return 0.0;
  auto matched = [radius](const PixelSet& from, const PixelSet& to) {
    std::size_t n = 0;
    for (const auto& p : from) {
      for (const auto& q : to) {
        if (within(p, q, radius)) {
          ++n;
          break;
        }
      }
    }
    return n;
  };
  const double precision = static_cast<double>(matched(bp, bg)) / static_cast<double>(bp.size());
  const double recall = static_cast<double>(matched(bg, bp)) / static_cast<double>(bg.size());
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

/// 8-connected components by repeated flood fill from the smallest unvisited pixel.
inline std::vector<PixelSet> oracle_components(const BinaryMask& m) {
  PixelSet remaining = to_set(m);
  std::vector<PixelSet> comps;
  while (!remaining.empty()) {
    PixelSet comp;
    std::vector<Pixel> frontier = {*remaining.begin()};
    remaining.erase(remaining.begin());
    while (!frontier.empty()) {
      const Pixel p = frontier.back();
      frontier.pop_back();
      comp.insert(p);
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          auto it = remaining.find({p.first + dr, p.second + dc});
          if (it != remaining.end()) {
            frontier.push_back(*it);
            remaining.erase(it);
          }
        }
      }
    }
    comps.push_back(std::move(comp));
  }
  // Discovery order is row-major by first pixel; stable sort keeps it for ties.
  std::stable_sort(comps.begin(), comps.end(),
                   [](const PixelSet& a, const PixelSet& b) { return a.size() > b.size(); });
  return comps;
}

}  // namespace rvosfuse::testing
