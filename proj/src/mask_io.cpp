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

#include "rvosfuse/mask_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "rvosfuse/errors.hpp"

namespace rvosfuse {

namespace {

struct ImageGuard {
  png_image image;
  ImageGuard() {
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
  }
  ~ImageGuard() { png_image_free(&image); }
  ImageGuard(const ImageGuard&) = delete;
  ImageGuard& operator=(const ImageGuard&) = delete;
};

void begin_read(ImageGuard& guard, const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError("cannot read mask file " + path.string() + ": no such file");
  }
  if (!png_image_begin_read_from_file(&guard.image, path.c_str())) {
    throw IoError("cannot decode mask file " + path.string() + ": " + guard.image.message);
  }
  if (guard.image.width == 0 || guard.image.height == 0) {
    throw FormatError("mask file " + path.string() + " has a zero dimension");
  }
}

}  // namespace

void write_mask(const BinaryMask& m, const std::filesystem::path& path) {
  std::vector<png_byte> pixels(m.pixel_count());
  const auto bits = m.bits();
  for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = bits[i] ? 255 : 0;

  ImageGuard guard;
  guard.image.width = static_cast<png_uint_32>(m.width());
  guard.image.height = static_cast<png_uint_32>(m.height());
  guard.image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&guard.image, path.c_str(), 0, pixels.data(), 0, nullptr)) {
    throw IoError("cannot write mask file " + path.string() + ": " + guard.image.message);
  }
}

BinaryMask read_mask(const std::filesystem::path& path) {
  ImageGuard guard;
  begin_read(guard, path);
  guard.image.format = PNG_FORMAT_GRAY;
  std::vector<png_byte> pixels(PNG_IMAGE_SIZE(guard.image));
  if (!png_image_finish_read(&guard.image, nullptr, pixels.data(), 0, nullptr)) {
    throw IoError("cannot decode mask file " + path.string() + ": " + guard.image.message);
  }
  const int w = static_cast<int>(guard.image.width);
  const int h = static_cast<int>(guard.image.height);
  std::vector<std::uint8_t> bits(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) bits[i] = pixels[i] > 127 ? 1 : 0;
  return BinaryMask(w, h, std::move(bits));
}

std::pair<int, int> read_mask_dimensions(const std::filesystem::path& path) {
  ImageGuard guard;
  begin_read(guard, path);
  return {static_cast<int>(guard.image.width), static_cast<int>(guard.image.height)};
}

}  // namespace rvosfuse
