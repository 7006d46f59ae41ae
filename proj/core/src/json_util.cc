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

#include "reusedetect/json_util.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "reusedetect/error.h"

namespace reusedetect {
namespace {

const Json& EmptyArray() {
  static const Json kEmpty = Json::array();
  return kEmpty;
}

std::string_view TypeName(const Json& node) { return node.type_name(); }

}  // namespace

ObjectReader::ObjectReader(
    const Json& node, std::string path,
    std::initializer_list<std::string_view> allowed_keys)
    : node_(node), path_(std::move(path)) {
  if (!node_.is_object()) {
    throw ValidationError(path_, "expected object, got " +
                                     std::string(TypeName(node_)));
  }
  for (const auto& [key, value] : node_.items()) {
    if (std::find(allowed_keys.begin(), allowed_keys.end(), key) ==
        allowed_keys.end()) {
      throw ValidationError(Child(key), "unknown field");
    }
  }
}

std::string ObjectReader::Child(std::string_view key) const {
  if (path_.empty()) return std::string(key);
  return path_ + "." + std::string(key);
}

bool ObjectReader::Has(std::string_view key) const {
  return node_.contains(std::string(key));
}

const Json& ObjectReader::Required(std::string_view key) const {
  auto it = node_.find(std::string(key));
  if (it == node_.end()) {
    throw ValidationError(Child(key), "missing required field");
  }
  return *it;
}

std::string ObjectReader::String(std::string_view key) const {
  return ExpectString(Required(key), Child(key));
}

std::string ObjectReader::OptionalString(std::string_view key,
                                         std::string fallback) const {
  if (!Has(key)) return fallback;
  return String(key);
}

std::uint64_t ObjectReader::Unsigned(std::string_view key) const {
  const Json& value = Required(key);
  const bool non_negative_int =
      value.is_number_unsigned() ||
      (value.is_number_integer() && value.get<std::int64_t>() >= 0);
  if (!non_negative_int) {
    throw ValidationError(Child(key), "expected unsigned integer, got " +
                                          std::string(TypeName(value)));
  }
  return value.get<std::uint64_t>();
}

double ObjectReader::Number(std::string_view key) const {
  const Json& value = Required(key);
  if (!value.is_number()) {
    throw ValidationError(Child(key),
                          "expected number, got " + std::string(TypeName(value)));
  }
  return value.get<double>();
}

bool ObjectReader::Bool(std::string_view key, bool fallback) const {
  if (!Has(key)) return fallback;
  const Json& value = Required(key);
  if (!value.is_boolean()) {
    throw ValidationError(Child(key), "expected boolean, got " +
                                          std::string(TypeName(value)));
  }
  return value.get<bool>();
}

const Json& ObjectReader::Array(std::string_view key) const {
  const Json& value = Required(key);
  if (!value.is_array()) {
    throw ValidationError(Child(key),
                          "expected array, got " + std::string(TypeName(value)));
  }
  return value;
}

const Json& ObjectReader::OptionalArray(std::string_view key) const {
  if (!Has(key)) return EmptyArray();
  return Array(key);
}

std::vector<std::string> ObjectReader::StringArray(std::string_view key) const {
  return ExpectStringArray(Array(key), Child(key));
}

std::string IndexPath(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

std::string ExpectString(const Json& node, const std::string& path) {
  if (!node.is_string()) {
    throw ValidationError(path,
                          "expected string, got " + std::string(TypeName(node)));
  }
  return node.get<std::string>();
}

std::vector<std::string> ExpectStringArray(const Json& node,
                                           const std::string& path) {
  if (!node.is_array()) {
    throw ValidationError(path,
                          "expected array, got " + std::string(TypeName(node)));
  }
  std::vector<std::string> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(ExpectString(node[i], IndexPath(path, i)));
  }
  return out;
}

Json ParseJsonText(std::string_view text, const std::string& origin) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ValidationError(origin, std::string("malformed JSON: ") + e.what());
  }
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path, "cannot open file for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

std::string DumpJson(const Json& value) { return value.dump(2) + "\n"; }

}  // namespace reusedetect
