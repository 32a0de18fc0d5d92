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

#include "rvosfuse/mask.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rvosfuse/errors.hpp"

namespace rvosfuse {

namespace {

std::string shape_string(const BinaryMask& m) {
  return std::to_string(m.width()) + "x" + std::to_string(m.height());
}

// Largest dx with dx*dx + dy*dy <= r*r, for dy in [0, r].
std::vector<int> disk_half_widths(int radius) {
  std::vector<int> half(static_cast<std::size_t>(radius) + 1);
  const long long r2 = static_cast<long long>(radius) * radius;
  for (int dy = 0; dy <= radius; ++dy) {
    const long long rem = r2 - static_cast<long long>(dy) * dy;
    auto dx = static_cast<long long>(std::sqrt(static_cast<double>(rem)));
    while (dx * dx > rem) --dx;
    while ((dx + 1) * (dx + 1) <= rem) ++dx;
    half[dy] = static_cast<int>(dx);
  }
  return half;
}

}  // namespace

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw ParameterError("mask dimensions must be positive, got " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  bits_.assign(static_cast<std::size_t>(width) * height, 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width <= 0 || height <= 0) {
    throw ParameterError("mask dimensions must be positive, got " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  if (bits_.size() != static_cast<std::size_t>(width) * height) {
    throw ShapeError("mask grid has " + std::to_string(bits_.size()) + " entries, expected " +
                     std::to_string(static_cast<std::size_t>(width) * height));
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

bool BinaryMask::empty() const noexcept {
  return std::none_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b != 0; });
}

void require_same_shape(const BinaryMask& a, const BinaryMask& b, const std::string& context) {
  if (!a.same_shape(b)) {
    std::string msg = "mask shape mismatch: " + shape_string(a) + " vs " + shape_string(b);
    if (!context.empty()) msg = context + ": " + msg;
    throw ShapeError(msg);
  }
}

std::size_t area(const BinaryMask& m) noexcept {
  const auto bits = m.bits();
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b);
  BinaryMask out = a;
  auto dst = out.mutable_bits();
  const auto src = b.bits();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
  return out;
}

BinaryMask mask_intersection(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b);
  BinaryMask out = a;
  auto dst = out.mutable_bits();
  const auto src = b.bits();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
  return out;
}

std::size_t intersection_area(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b);
  const auto x = a.bits();
  const auto y = b.bits();
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) n += x[i] & y[i];
  return n;
}

std::size_t union_area(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b);
  const auto x = a.bits();
  const auto y = b.bits();
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) n += x[i] | y[i];
  return n;
}

bool is_subset(const BinaryMask& inner, const BinaryMask& outer) {
  require_same_shape(inner, outer);
  const auto x = inner.bits();
  const auto y = outer.bits();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && !y[i]) return false;
  }
  return true;
}

double iou(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b);
  const auto x = a.bits();
  const auto y = b.bits();
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    inter += x[i] & y[i];
    uni += x[i] | y[i];
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<BinaryMask> connected_components(const BinaryMask& m) {
  const int w = m.width();
  const int h = m.height();
  const auto bits = m.bits();
  std::vector<int> label(bits.size(), -1);
  std::vector<std::vector<std::size_t>> pixels;
  std::vector<std::size_t> stack;

  for (std::size_t start = 0; start < bits.size(); ++start) {
    if (!bits[start] || label[start] >= 0) continue;
    const int id = static_cast<int>(pixels.size());
    pixels.emplace_back();
    auto& members = pixels.back();
    label[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      members.push_back(p);
      const int r = static_cast<int>(p / w);
      const int c = static_cast<int>(p % w);
      for (int dr = -1; dr <= 1; ++dr) {
        const int rr = r + dr;
        if (rr < 0 || rr >= h) continue;
        for (int dc = -1; dc <= 1; ++dc) {
          const int cc = c + dc;
          if ((dr == 0 && dc == 0) || cc < 0 || cc >= w) continue;
          const std::size_t q = static_cast<std::size_t>(rr) * w + cc;
          if (bits[q] && label[q] < 0) {
            label[q] = id;
            stack.push_back(q);
          }
        }
      }
    }
  }

  // Labels were handed out in row-major order of first pixel, so a stable
  // sort on area alone yields the required tie-break.
  std::vector<std::size_t> order(pixels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pixels[a].size() > pixels[b].size();
  });

  std::vector<BinaryMask> out;
  out.reserve(order.size());
  for (std::size_t id : order) {
    BinaryMask comp(w, h);
    auto dst = comp.mutable_bits();
    for (std::size_t p : pixels[id]) dst[p] = 1;
    out.push_back(std::move(comp));
  }
  return out;
}

BinaryMask boundary_pixels(const BinaryMask& m) {
  const int w = m.width();
  const int h = m.height();
  BinaryMask out(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!m.at(r, c)) continue;
      const bool edge = r == 0 || r == h - 1 || c == 0 || c == w - 1 || !m.at(r - 1, c) ||
                        !m.at(r + 1, c) || !m.at(r, c - 1) || !m.at(r, c + 1);
      if (edge) out.set(r, c);
    }
  }
  return out;
}

BinaryMask dilate(const BinaryMask& m, int radius) {
  if (radius < 0) throw ParameterError("dilation radius must be non-negative");
  if (radius == 0) return m;
  const int w = m.width();
  const int h = m.height();
  const auto half = disk_half_widths(radius);
  BinaryMask out(w, h);
  auto dst = out.mutable_bits();

  // Each horizontal foreground run [c0, c1] on row r contributes, for every
  // dy, the span [c0 - half[|dy|], c1 + half[|dy|]] on row r + dy.
  for (int r = 0; r < h; ++r) {
    const auto src = m.row(r);
    int c = 0;
    while (c < w) {
      if (!src[c]) {
        ++c;
        continue;
      }
      const int c0 = c;
      while (c < w && src[c]) ++c;
      const int c1 = c - 1;
      for (int dy = -radius; dy <= radius; ++dy) {
        const int rr = r + dy;
        if (rr < 0 || rr >= h) continue;
        const int k = half[dy < 0 ? -dy : dy];
        const int lo = std::max(0, c0 - k);
        const int hi = std::min(w - 1, c1 + k);
        std::fill(dst.begin() + static_cast<std::ptrdiff_t>(rr) * w + lo,
                  dst.begin() + static_cast<std::ptrdiff_t>(rr) * w + hi + 1, std::uint8_t{1});
      }
    }
  }
  return out;
}

}  // namespace rvosfuse
