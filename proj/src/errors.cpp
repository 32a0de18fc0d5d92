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

#include "rvosfuse/errors.hpp"

namespace rvosfuse {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kCorruptEncoding: return "corrupt encoding";
    case ErrorKind::kIo: return "I/O error";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kMissingInput: return "missing input";
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kRange: return "range error";
    case ErrorKind::kEmptyTrack: return "empty track";
    case ErrorKind::kInvariant: return "invariant violation";
  }
  return "error";
}

void throw_error(ErrorKind kind, const std::string& what) {
  switch (kind) {
    case ErrorKind::kShape: throw ShapeError(what);
    case ErrorKind::kCorruptEncoding: throw CorruptEncodingError(what);
    case ErrorKind::kIo: throw IoError(what);
    case ErrorKind::kFormat: throw FormatError(what);
    case ErrorKind::kValidation: throw ValidationError(what);
    case ErrorKind::kMissingInput: throw MissingInputError(what);
    case ErrorKind::kParameter: throw ParameterError(what);
    case ErrorKind::kRange: throw RangeError(what);
    case ErrorKind::kEmptyTrack: throw EmptyTrackError(what);
    case ErrorKind::kInvariant: throw InvariantError(what);
  }
  throw Error(kind, what);
}

}  // namespace rvosfuse
