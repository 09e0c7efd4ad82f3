// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skillseg/core_model.hpp"
#include "skillseg/error.hpp"
#include "skillseg/io.hpp"
#include "skillseg/rng.hpp"

namespace skillseg {

inline constexpr int kNumJoints = 25;
inline constexpr int kNumFeatures = 3 * kNumJoints;

/// Flat per-frame feature vector: index 3j is x of joint j, 3j+1 is y,
/// 3j+2 is the detector confidence (same order as the keypoint file).
using FeatureVector = std::array<double, kNumFeatures>;

struct PoseFrame {
  FeatureVector features{};
  bool detected = false;
};

struct VideoMeta {
  double width = 960;
  double height = 540;
  double fps = kDefaultFps;
};

struct FeatureSequence {
  std::string video_id;
  double fps = kDefaultFps;
  std::vector<FeatureVector> frames;
  std::vector<bool> detected;

  std::size_t size() const { return frames.size(); }
};

struct GroundTruth {
  std::string video_id;
  Timeline timeline;
  std::optional<std::string> md5;
};

struct DatasetSplit {
  std::vector<std::string> train;
  std::vector<std::string> test;
  std::uint64_t seed = 0;
};

/// Normalizes one person's 75 pixel-space keypoint values. An empty span
/// means nobody was detected. Coordinates are divided by the frame size and
/// clamped into [0, 1]; confidences pass through.
inline PoseFrame parse_pose_frame(std::span<const double> keypoints, double frame_width,
                                  double frame_height) {
  require(frame_width > 0 && frame_height > 0, "frame width and height must be positive");
  PoseFrame frame;
  if (keypoints.empty()) return frame;
  if (keypoints.size() != static_cast<std::size_t>(kNumFeatures))
    fail(ErrorKind::kSchema, "malformed keypoints: expected 75 values, got " +
                                 std::to_string(keypoints.size()));
  for (int j = 0; j < kNumJoints; ++j) {
    const double x = keypoints[3 * j];
    const double y = keypoints[3 * j + 1];
    const double c = keypoints[3 * j + 2];
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(c))
      fail(ErrorKind::kSchema, "malformed keypoints: non-finite value at joint " + std::to_string(j));
    frame.features[3 * j] = std::clamp(x / frame_width, 0.0, 1.0);
    frame.features[3 * j + 1] = std::clamp(y / frame_height, 0.0, 1.0);
    frame.features[3 * j + 2] = std::clamp(c, 0.0, 1.0);
  }
  frame.detected = true;
  return frame;
}

/// Parses an OpenPose per-frame record ({"people": [{"pose_keypoints_2d": [...]}]}).
/// Only the first person is used.
inline PoseFrame parse_pose_frame(const nlohmann::json& record, double frame_width,
                                  double frame_height) {
  if (!record.is_object() || !record.contains("people") || !record["people"].is_array())
    fail(ErrorKind::kSchema, "malformed keypoints: missing 'people' array");
  const auto& people = record["people"];
  if (people.empty()) return parse_pose_frame(std::span<const double>{}, frame_width, frame_height);
  const auto& person = people.front();
  if (!person.contains("pose_keypoints_2d") || !person["pose_keypoints_2d"].is_array())
    fail(ErrorKind::kSchema, "malformed keypoints: missing 'pose_keypoints_2d'");
  std::vector<double> values;
  values.reserve(kNumFeatures);
  for (const auto& v : person["pose_keypoints_2d"]) {
    if (!v.is_number()) fail(ErrorKind::kSchema, "malformed keypoints: non-numeric value");
    values.push_back(v.get<double>());
  }
  if (values.empty())
    fail(ErrorKind::kSchema, "malformed keypoints: expected 75 values, got 0");
  return parse_pose_frame(std::span<const double>(values), frame_width, frame_height);
}

inline VideoMeta read_video_meta(const io::fs::path& path) {
  const auto j = io::read_json(path);
  VideoMeta m;
  m.width = io::field<double>(j, "width", path.string());
  m.height = io::field<double>(j, "height", path.string());
  if (j.contains("fps")) m.fps = io::field<double>(j, "fps", path.string());
  if (!(m.width > 0 && m.height > 0 && m.fps > 0))
    fail(ErrorKind::kSchema, path.string() + ": width, height and fps must be positive");
  return m;
}

namespace detail {

/// Frame index encoded as the last run of digits in a file stem, e.g.
/// "clip_000000000007_keypoints" -> 7.
inline std::optional<long> frame_index_from_name(const std::string& stem) {
  std::size_t end = stem.size();
  while (end > 0 && !std::isdigit(static_cast<unsigned char>(stem[end - 1]))) --end;
  if (end == 0) return std::nullopt;
  std::size_t begin = end;
  while (begin > 0 && std::isdigit(static_cast<unsigned char>(stem[begin - 1]))) --begin;
  return std::stol(stem.substr(begin, end - begin));
}

}  // namespace detail

/// Loads every "*.json" keypoint record in `dir` (except meta.json), ordered
/// by the frame index in the file name. Indices must run 0, 1, ..., n-1.
inline FeatureSequence load_video_features(const io::fs::path& dir, const VideoMeta& meta,
                                           std::string video_id = {}) {
  if (!io::fs::is_directory(dir)) fail(ErrorKind::kIo, "not a directory: " + dir.string());
  std::map<long, io::fs::path> by_index;
  for (const auto& entry : io::fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    if (entry.path().filename() == "meta.json") continue;
    const auto idx = detail::frame_index_from_name(entry.path().stem().string());
    if (!idx) fail(ErrorKind::kSchema, "no frame index in file name " + entry.path().string());
    if (!by_index.emplace(*idx, entry.path()).second)
      fail(ErrorKind::kSchema, "duplicate frame " + std::to_string(*idx) + " in " + dir.string());
  }
  if (by_index.empty()) fail(ErrorKind::kSchema, "no keypoint records in " + dir.string());

  FeatureSequence seq;
  seq.video_id = video_id.empty() ? dir.filename().string() : std::move(video_id);
  seq.fps = meta.fps;
  long expected = 0;
  for (const auto& [idx, path] : by_index) {
    if (idx != expected)
      fail(ErrorKind::kSchema, "missing frame " + std::to_string(expected) +
                                   (expected + 1 < idx ? "-" + std::to_string(idx - 1) : "") +
                                   " in " + dir.string());
    PoseFrame f;
    try {
      f = parse_pose_frame(io::read_json(path), meta.width, meta.height);
    } catch (const Error& e) {
      fail(e.kind(), "frame " + std::to_string(idx) + " (" + path.string() + "): " + e.what());
    }
    seq.frames.push_back(f.features);
    seq.detected.push_back(f.detected);
    ++expected;
  }
  return seq;
}

inline GroundTruth load_annotation(const io::fs::path& path) {
  TimelineFile f = read_timeline(path);
  return {std::move(f.video_id), std::move(f.timeline), std::move(f.md5)};
}

/// Seeded shuffle, then the first round(ratio * n) ids go to train. Each side
/// keeps the input order.
inline DatasetSplit split_dataset(std::span<const std::string> ids, double ratio, std::uint64_t seed) {
  require(!ids.empty(), "split_dataset: empty id list");
  require(ratio > 0.0 && ratio < 1.0, "split_dataset: ratio must be in (0, 1)");
  std::vector<std::size_t> order(ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  shuffle(std::span<std::size_t>(order), rng);
  const auto n_train = static_cast<std::size_t>(std::lround(ratio * static_cast<double>(ids.size())));
  std::vector<bool> in_train(ids.size(), false);
  for (std::size_t i = 0; i < n_train; ++i) in_train[order[i]] = true;
  DatasetSplit split;
  split.seed = seed;
  for (std::size_t i = 0; i < ids.size(); ++i) (in_train[i] ? split.train : split.test).push_back(ids[i]);
  return split;
}

// ---------------------------------------------------------------------------
// Feature cache: {"video_id", "fps", "n_features": 75, "detected": [bool...],
//                 "frames": [[75 floats], ...]} in frame order.

inline nlohmann::json features_to_json(const FeatureSequence& seq) {
  nlohmann::json frames = nlohmann::json::array();
  for (const auto& f : seq.frames) frames.push_back(f);
  return {{"video_id", seq.video_id},
          {"fps", seq.fps},
          {"n_features", kNumFeatures},
          {"detected", seq.detected},
          {"frames", frames}};
}

inline FeatureSequence features_from_json(const nlohmann::json& j, std::string_view context = "features") {
  FeatureSequence seq;
  seq.video_id = io::field<std::string>(j, "video_id", context);
  seq.fps = j.contains("fps") ? io::field<double>(j, "fps", context) : kDefaultFps;
  if (io::field<int>(j, "n_features", context) != kNumFeatures)
    fail(ErrorKind::kSchema, std::string(context) + ": n_features must be 75");
  const auto frames = io::field<std::vector<std::vector<double>>>(j, "frames", context);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].size() != static_cast<std::size_t>(kNumFeatures))
      fail(ErrorKind::kSchema, std::string(context) + ": frame " + std::to_string(i) +
                                   " has " + std::to_string(frames[i].size()) + " features");
    FeatureVector v;
    std::copy(frames[i].begin(), frames[i].end(), v.begin());
    seq.frames.push_back(v);
  }
  if (j.contains("detected")) {
    seq.detected = io::field<std::vector<bool>>(j, "detected", context);
    if (seq.detected.size() != seq.frames.size())
      fail(ErrorKind::kSchema, std::string(context) + ": 'detected' length mismatch");
  } else {
    seq.detected.assign(seq.frames.size(), true);
  }
  return seq;
}

inline FeatureSequence read_features(const io::fs::path& path) {
  return features_from_json(io::read_json(path), path.string());
}

inline void write_features(const io::fs::path& path, const FeatureSequence& seq) {
  io::write_atomic(path, features_to_json(seq).dump() + "\n");
}

}  // namespace skillseg
