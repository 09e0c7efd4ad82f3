// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "skillseg/error.hpp"
#include "skillseg/io.hpp"

namespace skillseg {

/// The nine isometric skills plus the NONE background class. Ids follow the
/// skill table's alphabetical order with NONE last.
enum class SkillClass : std::uint8_t {
  kBL = 0,
  kFL = 1,
  kFLAG = 2,
  kIC = 3,
  kMAL = 4,
  kOAFL = 5,
  kOAHS = 6,
  kPL = 7,
  kVSIT = 8,
  kNONE = 9,
};

inline constexpr int kNumClasses = 10;
inline constexpr int kNoneClass = static_cast<int>(SkillClass::kNONE);
inline constexpr double kDefaultFps = 24.0;

inline constexpr std::array<std::string_view, kNumClasses> kClassNames = {
    "BL", "FL", "FLAG", "IC", "MAL", "OAFL", "OAHS", "PL", "VSIT", "NONE"};

/// Class ids are plain ints in algorithm code so that synthetic runs can use
/// fewer than ten classes; every id is still a valid SkillClass.
using ClassId = int;

inline bool is_valid_class(ClassId id) { return id >= 0 && id < kNumClasses; }

inline std::string_view class_name(ClassId id) {
  require(is_valid_class(id), "class id out of range: " + std::to_string(id));
  return kClassNames[static_cast<std::size_t>(id)];
}

inline std::string_view class_name(SkillClass c) { return class_name(static_cast<ClassId>(c)); }

inline std::optional<ClassId> class_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kClassNames.size(); ++i) {
    if (kClassNames[i] == name) return static_cast<ClassId>(i);
  }
  return std::nullopt;
}

struct LabelSequence {
  std::vector<ClassId> labels;
  double fps = kDefaultFps;

  std::size_t size() const { return labels.size(); }
  bool operator==(const LabelSequence&) const = default;
};

/// Inclusive frame span [start, end] carrying one class.
struct Segment {
  ClassId label = 0;
  int start = 0;
  int end = 0;

  int duration_frames() const { return end - start + 1; }
  double duration_seconds(double fps) const { return duration_frames() / fps; }
  bool operator==(const Segment&) const = default;
};

struct Timeline {
  std::vector<Segment> segments;
  int n_frames = 0;
  double fps = kDefaultFps;

  bool operator==(const Timeline& other) const {
    return n_frames == other.n_frames && segments == other.segments;
  }
};

/// Throws kInvariant with "gap at frame k" / "overlap at frame k" when the
/// segments do not tile [0, n_frames - 1]. Maximality is not checked here.
inline void check_contiguous(const Timeline& t) {
  if (t.n_frames < 1) fail(ErrorKind::kInvariant, "timeline has no frames");
  int next = 0;
  for (const Segment& s : t.segments) {
    if (!is_valid_class(s.label))
      fail(ErrorKind::kInvariant, "class id out of range: " + std::to_string(s.label));
    if (s.end < s.start)
      fail(ErrorKind::kInvariant, "segment end before start at frame " + std::to_string(s.start));
    if (s.start < 0 || s.end > t.n_frames - 1)
      fail(ErrorKind::kInvariant, "segment bounds outside [0, " + std::to_string(t.n_frames - 1) +
                                      "] at frame " +
                                      std::to_string(s.start < 0 ? s.start : s.end));
    if (s.start > next) fail(ErrorKind::kInvariant, "gap at frame " + std::to_string(next));
    if (s.start < next) fail(ErrorKind::kInvariant, "overlap at frame " + std::to_string(s.start));
    next = s.end + 1;
  }
  if (next != t.n_frames) fail(ErrorKind::kInvariant, "gap at frame " + std::to_string(next));
}

/// Contiguity plus maximality (no two neighbours share a class).
inline bool is_valid_timeline(const Timeline& t) {
  try {
    check_contiguous(t);
  } catch (const Error&) {
    return false;
  }
  for (std::size_t i = 1; i < t.segments.size(); ++i) {
    if (t.segments[i].label == t.segments[i - 1].label) return false;
  }
  return true;
}

inline Timeline labels_to_segments(const LabelSequence& seq) {
  if (seq.labels.empty()) fail(ErrorKind::kInvalidArgument, "empty sequence");
  Timeline t;
  t.n_frames = static_cast<int>(seq.labels.size());
  t.fps = seq.fps;
  int start = 0;
  for (int i = 1; i <= t.n_frames; ++i) {
    if (i == t.n_frames || seq.labels[i] != seq.labels[start]) {
      t.segments.push_back({seq.labels[start], start, i - 1});
      start = i;
    }
  }
  return t;
}

inline LabelSequence segments_to_labels(const Timeline& t) {
  check_contiguous(t);
  LabelSequence seq;
  seq.fps = t.fps;
  seq.labels.reserve(static_cast<std::size_t>(t.n_frames));
  for (const Segment& s : t.segments) seq.labels.insert(seq.labels.end(), s.duration_frames(), s.label);
  return seq;
}

/// Merges neighbouring segments of equal class; input must be contiguous.
inline Timeline canonicalize(const Timeline& t) { return labels_to_segments(segments_to_labels(t)); }

/// Frame-count IoU of two inclusive spans; class labels are ignored.
inline double segment_iou(const Segment& a, const Segment& b) {
  const int inter = std::min(a.end, b.end) - std::max(a.start, b.start) + 1;
  if (inter <= 0) return 0.0;
  const int uni = a.duration_frames() + b.duration_frames() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

// ---------------------------------------------------------------------------
// Timeline file format:
//   {"video_id": str, "fps": num, "n_frames": int, "md5": str (optional),
//    "segments": [{"class": name, "start_frame": int, "end_frame": int}, ...]}

struct TimelineFile {
  std::string video_id;
  Timeline timeline;
  std::optional<std::string> md5;
};

inline nlohmann::json timeline_to_json(const TimelineFile& f) {
  nlohmann::json segs = nlohmann::json::array();
  for (const Segment& s : f.timeline.segments) {
    segs.push_back({{"class", std::string(class_name(s.label))},
                    {"start_frame", s.start},
                    {"end_frame", s.end}});
  }
  nlohmann::json j = {{"video_id", f.video_id},
                      {"fps", f.timeline.fps},
                      {"n_frames", f.timeline.n_frames},
                      {"segments", segs}};
  if (f.md5) j["md5"] = *f.md5;
  return j;
}

/// Parses and validates; neighbouring same-class segments are merged.
inline TimelineFile timeline_from_json(const nlohmann::json& j, std::string_view context = "timeline") {
  using io::field;
  TimelineFile f;
  f.video_id = field<std::string>(j, "video_id", context);
  f.timeline.fps = j.contains("fps") ? field<double>(j, "fps", context) : kDefaultFps;
  if (!(f.timeline.fps > 0)) fail(ErrorKind::kSchema, std::string(context) + ": fps must be positive");
  f.timeline.n_frames = field<int>(j, "n_frames", context);
  if (j.contains("md5") && !j["md5"].is_null()) f.md5 = field<std::string>(j, "md5", context);
  const auto segs = field<nlohmann::json>(j, "segments", context);
  if (!segs.is_array()) fail(ErrorKind::kSchema, std::string(context) + ": 'segments' must be an array");
  for (const auto& s : segs) {
    const auto name = field<std::string>(s, "class", context);
    const auto id = class_from_name(name);
    if (!id) fail(ErrorKind::kSchema, std::string(context) + ": unknown class '" + name + "'");
    f.timeline.segments.push_back(
        {*id, field<int>(s, "start_frame", context), field<int>(s, "end_frame", context)});
  }
  try {
    check_contiguous(f.timeline);
  } catch (const Error& e) {
    fail(ErrorKind::kInvariant, std::string(context) + ": " + e.what());
  }
  const double fps = f.timeline.fps;
  f.timeline = canonicalize(f.timeline);
  f.timeline.fps = fps;
  return f;
}

inline TimelineFile read_timeline(const io::fs::path& path) {
  return timeline_from_json(io::read_json(path), path.string());
}

inline void write_timeline(const io::fs::path& path, const TimelineFile& f) {
  io::write_json(path, timeline_to_json(f));
}

}  // namespace skillseg
