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

#include <filesystem>
#include <utility>

#include "rvosfuse/mask.hpp"

namespace rvosfuse {

/// Writes an 8-bit single-channel PNG: foreground 255, background 0.
void write_mask(const BinaryMask& m, const std::filesystem::path& path);

/// Reads an 8-bit PNG; any value above 127 is foreground. Colour inputs are
/// converted to grey first. Throws IoError for a missing or undecodable file
/// and FormatError for a zero dimension.
BinaryMask read_mask(const std::filesystem::path& path);

/// {width, height} from the PNG header without decoding pixels.
std::pair<int, int> read_mask_dimensions(const std::filesystem::path& path);

}  // namespace rvosfuse
