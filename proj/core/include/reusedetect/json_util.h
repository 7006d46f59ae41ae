// Copyright 2026 The reusedetect Authors. All Rights Reserved.
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
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace reusedetect {

// Insertion-ordered JSON keeps serialized key order stable and readable.
using Json = nlohmann::ordered_json;

// Reads a JSON object field by field, rejecting unknown keys and reporting
// type errors with a path into the document.
class ObjectReader {
 public:
  ObjectReader(const Json& node, std::string path,
               std::initializer_list<std::string_view> allowed_keys);

  const std::string& path() const { return path_; }
  std::string Child(std::string_view key) const;
  bool Has(std::string_view key) const;

  const Json& Required(std::string_view key) const;
  std::string String(std::string_view key) const;
  std::string OptionalString(std::string_view key,
                             std::string fallback = {}) const;
  std::uint64_t Unsigned(std::string_view key) const;
  double Number(std::string_view key) const;
  bool Bool(std::string_view key, bool fallback) const;
  const Json& Array(std::string_view key) const;
  const Json& OptionalArray(std::string_view key) const;
  std::vector<std::string> StringArray(std::string_view key) const;

 private:
  const Json& node_;
  std::string path_;
};

std::string IndexPath(const std::string& path, std::size_t index);
std::string ExpectString(const Json& node, const std::string& path);
std::vector<std::string> ExpectStringArray(const Json& node,
                                           const std::string& path);

// Parses text, converting syntax errors to ValidationError.
Json ParseJsonText(std::string_view text, const std::string& origin);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view contents);

// Two-space indentation plus a trailing newline.
std::string DumpJson(const Json& value);

}  // namespace reusedetect
