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

#include <stdexcept>
#include <string>

namespace rvosfuse {

/// Broad failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
  kShape,
  kCorruptEncoding,
  kIo,
  kFormat,
  kValidation,
  kMissingInput,
  kParameter,
  kRange,
  kEmptyTrack,
  kInvariant,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(ErrorKind::kShape, what) {}
};

class CorruptEncodingError : public Error {
 public:
  explicit CorruptEncodingError(const std::string& what)
      : Error(ErrorKind::kCorruptEncoding, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(ErrorKind::kFormat, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::kValidation, what) {}
};

class MissingInputError : public Error {
 public:
  explicit MissingInputError(const std::string& what) : Error(ErrorKind::kMissingInput, what) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(ErrorKind::kParameter, what) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorKind::kRange, what) {}
};

class EmptyTrackError : public Error {
 public:
  explicit EmptyTrackError(const std::string& what) : Error(ErrorKind::kEmptyTrack, what) {}
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error(ErrorKind::kInvariant, what) {}
};

/// Throws the subclass matching `kind`.
[[noreturn]] void throw_error(ErrorKind kind, const std::string& what);

}  // namespace rvosfuse
