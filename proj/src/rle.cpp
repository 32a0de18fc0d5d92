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

#include "rvosfuse/rle.hpp"

#include <limits>
#include <string>

#include "rvosfuse/errors.hpp"

namespace rvosfuse {

RleMask encode_rle(const BinaryMask& m) {
  RleMask out{m.width(), m.height(), {}};
  const int w = m.width();
  const int h = m.height();
  std::uint8_t current = 0;
  std::uint64_t run = 0;
  for (int c = 0; c < w; ++c) {
    for (int r = 0; r < h; ++r) {
      const std::uint8_t v = m.at(r, c) ? 1 : 0;
      if (v != current) {
        out.counts.push_back(run);
        run = 0;
        current = v;
      }
      ++run;
    }
  }
  out.counts.push_back(run);

  std::uint64_t total = 0;
  for (auto n : out.counts) total += n;
  if (total != m.pixel_count()) {
    throw InvariantError("RLE counts sum to " + std::to_string(total) + ", expected " +
                         std::to_string(m.pixel_count()));
  }
  return out;
}

BinaryMask decode_rle(const RleMask& rle) {
  if (rle.width <= 0 || rle.height <= 0) {
    throw CorruptEncodingError("RLE has non-positive size " + std::to_string(rle.width) + "x" +
                               std::to_string(rle.height));
  }
  const std::uint64_t expected = static_cast<std::uint64_t>(rle.width) * rle.height;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < rle.counts.size(); ++i) {
    const auto n = rle.counts[i];
    if (n == 0 && i != 0) {
      throw CorruptEncodingError("RLE has a zero-length run at position " + std::to_string(i));
    }
    if (n > std::numeric_limits<std::uint64_t>::max() - total) {
      throw CorruptEncodingError("RLE counts overflow");
    }
    total += n;
  }
  if (total != expected) {
    throw CorruptEncodingError("RLE counts sum to " + std::to_string(total) + ", expected " +
                               std::to_string(expected) + " for " + std::to_string(rle.width) +
                               "x" + std::to_string(rle.height));
  }

  BinaryMask m(rle.width, rle.height);
  const int h = rle.height;
  std::uint64_t pos = 0;
  bool fg = false;
  for (auto n : rle.counts) {
    if (fg) {
      for (std::uint64_t k = pos; k < pos + n; ++k) {
        m.set(static_cast<int>(k % h), static_cast<int>(k / h));
      }
    }
    pos += n;
    fg = !fg;
  }
  return m;
}

}  // namespace rvosfuse
