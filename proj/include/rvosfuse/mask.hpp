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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rvosfuse {

/// A single frame's foreground/background grid, stored row-major with one
/// byte per pixel (0 or 1).
class BinaryMask {
 public:
  /// All-background mask. Throws ParameterError unless width and height are positive.
  BinaryMask(int width, int height);

  /// Takes ownership of a row-major grid; any nonzero byte is foreground.
  /// Throws ShapeError when bits.size() != width * height.
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return bits_.size(); }

  bool at(int row, int col) const { return bits_[index(row, col)] != 0; }
  void set(int row, int col, bool value = true) { bits_[index(row, col)] = value ? 1 : 0; }

  bool contains(int row, int col) const noexcept {
    return row >= 0 && row < height_ && col >= 0 && col < width_;
  }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::span<std::uint8_t> mutable_bits() noexcept { return bits_; }

  std::span<const std::uint8_t> row(int r) const noexcept {
    return std::span<const std::uint8_t>(bits_).subspan(static_cast<std::size_t>(r) * width_,
                                                        width_);
  }

  bool same_shape(const BinaryMask& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  bool empty() const noexcept;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * width_ + col;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

/// Throws ShapeError with `context` when the two masks differ in size.
void require_same_shape(const BinaryMask& a, const BinaryMask& b, const std::string& context = {});

std::size_t area(const BinaryMask& m) noexcept;

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_intersection(const BinaryMask& a, const BinaryMask& b);

std::size_t intersection_area(const BinaryMask& a, const BinaryMask& b);
std::size_t union_area(const BinaryMask& a, const BinaryMask& b);

/// True when every foreground pixel of `inner` is foreground in `outer`.
bool is_subset(const BinaryMask& inner, const BinaryMask& outer);

/// |a ∩ b| / |a ∪ b|. Two empty masks score 1.
double iou(const BinaryMask& a, const BinaryMask& b);

/// 8-connected components, largest first. Equal areas keep row-major order
/// of each component's first pixel.
std::vector<BinaryMask> connected_components(const BinaryMask& m);

/// Foreground pixels with a background or out-of-bounds 4-neighbour.
BinaryMask boundary_pixels(const BinaryMask& m);

/// Euclidean-disk dilation: p is set iff some foreground q has |p - q| <= radius.
BinaryMask dilate(const BinaryMask& m, int radius);

}  // namespace rvosfuse
