// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "skillseg/error.hpp"

namespace skillseg::io {

namespace fs = std::filesystem;
using json = nlohmann::json;

inline std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorKind::kIo, "read failed: " + path.string());
  return ss.str();
}

inline json read_json(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kSchema, path.string() + ": invalid JSON (" + e.what() + ")");
  }
}

/// Writes to a sibling temp file and renames it over `path`, so readers never
/// observe a partially written artifact.
inline void write_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::kIo, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) fail(ErrorKind::kIo, "write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::kIo, "cannot rename into " + path.string());
  }
}

inline void write_json(const fs::path& path, const json& j, int indent = 1) {
  write_atomic(path, j.dump(indent) + "\n");
}

/// Typed field access that reports schema violations with the field name.
template <typename T>
T field(const json& obj, std::string_view key, std::string_view context) {
  if (!obj.is_object()) fail(ErrorKind::kSchema, std::string(context) + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    fail(ErrorKind::kSchema, std::string(context) + ": missing field '" + std::string(key) + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::kSchema,
         std::string(context) + ": field '" + std::string(key) + "' has the wrong type");
  }
}

}  // namespace skillseg::io
