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

#include <cstdint>
#include <vector>

#include "rvosfuse/mask.hpp"

namespace rvosfuse {

/// Uncompressed COCO-style run-length encoding.
///
/// Pixels are visited column-major (down each column, then left to right).
/// `counts` alternates background/foreground runs starting with background,
/// so a mask whose first pixel is foreground begins with a 0 count. Only that
/// leading count may be zero, and the counts sum to width * height.
struct RleMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint64_t> counts;

  friend bool operator==(const RleMask&, const RleMask&) = default;
};

RleMask encode_rle(const BinaryMask& m);

/// Throws CorruptEncodingError if the counts do not describe a width x height grid.
BinaryMask decode_rle(const RleMask& rle);

}  // namespace rvosfuse
