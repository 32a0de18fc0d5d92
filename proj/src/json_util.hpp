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

// Internal helpers for the JSON-based interchange files.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"
#include "rvosfuse/errors.hpp"
#include "rvosfuse/rle.hpp"

namespace rvosfuse::detail {

using json = nlohmann::json;

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw FormatError("cannot parse " + path.string() + ": " + e.what());
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

inline void write_json_file(const std::filesystem::path& path, const json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

inline const json& require_key(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + ": missing key '" + key + "'");
  return *it;
}

inline std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require_key(obj, key, where);
  if (!v.is_string()) throw ValidationError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

inline long long require_integer(const json& obj, const char* key, const std::string& where) {
  const json& v = require_key(obj, key, where);
  if (!v.is_number_integer()) throw ValidationError(where + ": '" + key + "' must be an integer");
  return v.get<long long>();
}

inline double require_number(const json& obj, const char* key, const std::string& where) {
  const json& v = require_key(obj, key, where);
  if (!v.is_number()) throw ValidationError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

inline const json& require_array(const json& obj, const char* key, const std::string& where) {
  const json& v = require_key(obj, key, where);
  if (!v.is_array()) throw ValidationError(where + ": '" + key + "' must be an array");
  return v;
}

/// {"size": [height, width], "counts": [...]}
/// "format" and "version" are optional on input; when present they must match.
inline void check_format(const json& doc, const char* format, const std::string& where) {
  if (!doc.is_object()) throw ValidationError(where + ": expected a JSON object");
  if (doc.contains("format") && require_string(doc, "format", where) != format) {
    throw ValidationError(where + ": expected format \"" + format + "\", got \"" +
                          doc["format"].get<std::string>() + "\"");
  }
  if (doc.contains("version") && require_integer(doc, "version", where) != 1) {
    throw ValidationError(where + ": unsupported version " + doc["version"].dump());
  }
}

inline void require_known_keys(const json& obj, std::initializer_list<const char*> keys,
                               const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return key == k; }) == keys.end()) {
      throw ValidationError(where + ": unknown key '" + key + "'");
    }
  }
}

inline json rle_to_json(const RleMask& rle) {
  return json{{"size", {rle.height, rle.width}}, {"counts", rle.counts}};
}

inline RleMask rle_from_json(const json& obj, const std::string& where) {
  const json& size = require_array(obj, "size", where);
  if (size.size() != 2 || !size[0].is_number_integer() || !size[1].is_number_integer()) {
    throw ValidationError(where + ": 'size' must be [height, width]");
  }
  RleMask rle;
  rle.height = size[0].get<int>();
  rle.width = size[1].get<int>();
  for (const json& c : require_array(obj, "counts", where)) {
    if (!c.is_number_unsigned() && !(c.is_number_integer() && c.get<long long>() >= 0)) {
      throw ValidationError(where + ": RLE counts must be non-negative integers");
    }
    rle.counts.push_back(c.get<std::uint64_t>());
  }
  return rle;
}

/// IDs become directory names, so they must be single safe path components.
inline void require_path_component(const std::string& id, const std::string& what,
                                   const std::string& where) {
  if (id.empty() || id == "." || id == ".." || id.find_first_of("/\\") != std::string::npos) {
    throw ValidationError(where + ": " + what + " '" + id + "' is not a valid path component");
  }
}

}  // namespace rvosfuse::detail
