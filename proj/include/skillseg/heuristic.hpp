// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "skillseg/core_model.hpp"
#include "skillseg/error.hpp"

namespace skillseg {

/// Three-step smoother over per-frame labels: sliding-window mode extraction
/// (SWME), neighbourhood filtering of the extracted modes (FNR) and timeline
/// reconstruction (TR).
struct HeuristicConfig {
  int m = 32;             // window multiplier
  double up_num = 0.14;   // reward per equal adjacent pair, divided by n
  double dw_num = -0.11;  // penalty per differing adjacent pair, divided by n
  int stride = 3;
  int fnr_radius = 2;

  void validate() const {
    require(m >= 1, "heuristic: m must be >= 1");
    require(stride >= 1, "heuristic: stride must be >= 1");
    require(fnr_radius >= 0, "heuristic: fnr_radius must be >= 0");
  }
};

/// One SWME output: the unique mode of a window and the first/last frame
/// carrying it. window_start/window_end give the window the mode came from;
/// an idx_start past window_start (or idx_end before window_end) means the
/// class edge was actually seen inside the window.
struct IntervalRecord {
  ClassId mode_class = 0;
  int idx_start = 0;
  int idx_end = 0;
  int window_start = 0;
  int window_end = 0;

  static IntervalRecord span(ClassId c, int start, int end) { return {c, start, end, start, end}; }

  bool start_observed() const { return idx_start > window_start; }
  bool end_observed() const { return idx_end < window_end; }
  bool operator==(const IntervalRecord&) const = default;
};

/// w_b = floor((1 - s) * m), s = 0.5 + sum over adjacent pairs of up (equal)
/// or dw (different), up = up_num / n, dw = dw_num / n. Clamped to >= 2.
inline int base_window(const LabelSequence& seq, const HeuristicConfig& cfg = {}) {
  cfg.validate();
  const std::size_t n = seq.size();
  if (n < 2) fail(ErrorKind::kInvalidArgument, "sequence too short");
  long equal = 0;
  long differ = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) (seq.labels[i] == seq.labels[i + 1] ? equal : differ)++;
  const double nd = static_cast<double>(n);
  const double s = 0.5 + static_cast<double>(equal) * (cfg.up_num / nd) +
                   static_cast<double>(differ) * (cfg.dw_num / nd);
  const int wb = static_cast<int>(std::floor((1.0 - s) * cfg.m));
  return std::max(wb, 2);
}

namespace detail {

struct WindowMode {
  ClassId mode;
  bool unique;
};

inline WindowMode window_mode(const std::vector<ClassId>& labels, int first, int last) {
  std::array<int, kNumClasses> counts{};
  for (int i = first; i <= last; ++i) ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
  ClassId best = 0;
  for (ClassId k = 1; k < kNumClasses; ++k) {
    if (counts[static_cast<std::size_t>(k)] > counts[static_cast<std::size_t>(best)]) best = k;
  }
  int ties = 0;
  for (int c : counts) ties += c == counts[static_cast<std::size_t>(best)];
  return {best, ties == 1};
}

}  // namespace detail

/// Sliding window mode extraction with an explicit base window. The window
/// [c - ws + 1, c] starts at c = window - 1. A unique mode emits a record,
/// resets ws to the base window and advances c by (window - stride), at
/// least 1; a tied mode grows the window to the right by one frame. At the
/// last frame ties go to the lowest class id. When an advance would step past
/// the end, one final window ending at n - 1 is evaluated.
inline std::vector<IntervalRecord> swme(const LabelSequence& seq, int window, const HeuristicConfig& cfg = {}) {
  cfg.validate();
  const int n = static_cast<int>(seq.size());
  require(window >= 1, "swme: window must be >= 1");
  if (n < window) fail(ErrorKind::kInvalidArgument, "swme: sequence shorter than window");
  for (ClassId y : seq.labels) require(is_valid_class(y), "swme: class id out of range");

  const int advance = std::max(1, window - cfg.stride);
  std::vector<IntervalRecord> out;
  int ws = window;
  int c = window - 1;
  while (true) {
    const int first = c - ws + 1;
    const auto wm = detail::window_mode(seq.labels, first, c);
    if (!wm.unique && c < n - 1) {
      ++ws;
      ++c;
      continue;
    }
    IntervalRecord rec{wm.mode, c, first, first, c};
    for (int i = first; i <= c; ++i) {
      if (seq.labels[static_cast<std::size_t>(i)] == wm.mode) {
        rec.idx_start = std::min(rec.idx_start, i);
        rec.idx_end = i;
      }
    }
    out.push_back(rec);
    if (c == n - 1) break;
    ws = window;
    c = std::min(c + advance, n - 1);
  }
  return out;
}

inline std::vector<IntervalRecord> swme(const LabelSequence& seq, const HeuristicConfig& cfg = {}) {
  return swme(seq, base_window(seq, cfg), cfg);
}

/// Replaces each record's class by the mode of records j-r..j+r (indices
/// clamped, so edge records repeat). Ties keep the record's own class.
/// Relabeled records lose their observed-edge information.
inline std::vector<IntervalRecord> fnr(const std::vector<IntervalRecord>& records, const HeuristicConfig& cfg = {}) {
  cfg.validate();
  require(!records.empty(), "fnr: empty record list");
  const int w = static_cast<int>(records.size());
  std::vector<IntervalRecord> out = records;
  for (int j = 0; j < w; ++j) {
    std::array<int, kNumClasses> counts{};
    for (int d = -cfg.fnr_radius; d <= cfg.fnr_radius; ++d) {
      const int idx = std::clamp(j + d, 0, w - 1);
      ++counts[static_cast<std::size_t>(records[static_cast<std::size_t>(idx)].mode_class)];
    }
    const int top = *std::max_element(counts.begin(), counts.end());
    if (std::count(counts.begin(), counts.end(), top) != 1) continue;
    const auto mode = static_cast<ClassId>(std::find(counts.begin(), counts.end(), top) - counts.begin());
    auto& rec = out[static_cast<std::size_t>(j)];
    if (mode != rec.mode_class) {
      rec.mode_class = mode;
      rec.window_start = rec.idx_start;
      rec.window_end = rec.idx_end;
    }
  }
  return out;
}

/// Merges runs of equal-class records into spans, then tiles [0, n - 1].
/// The boundary between two spans is taken from whichever side saw the
/// class edge inside its window (averaged when both did); otherwise it is
/// the midpoint of the gap, the left span taking the extra frame.
inline Timeline tr(const std::vector<IntervalRecord>& records, int n_frames) {
  require(!records.empty(), "tr: empty record list");
  require(n_frames >= 1, "tr: n_frames must be >= 1");

  struct Span {
    ClassId label;
    IntervalRecord first;
    IntervalRecord last;
  };
  std::vector<Span> spans;
  for (const auto& r : records) {
    if (!spans.empty() && spans.back().label == r.mode_class) {
      spans.back().last = r;
    } else {
      spans.push_back({r.mode_class, r, r});
    }
  }

  // Frame i belongs to span k when bounds[k-1] < i <= bounds[k].
  std::vector<int> bounds;
  for (std::size_t k = 0; k + 1 < spans.size(); ++k) {
    const IntervalRecord& left = spans[k].last;
    const IntervalRecord& right = spans[k + 1].first;
    int b;
    if (left.end_observed() && right.start_observed()) {
      b = (left.idx_end + right.idx_start - 1) / 2;
    } else if (left.end_observed()) {
      b = left.idx_end;
    } else if (right.start_observed()) {
      b = right.idx_start - 1;
    } else {
      b = (left.idx_end + right.idx_start) / 2;
    }
    bounds.push_back(std::clamp(b, -1, n_frames - 1));
  }
  bounds.push_back(n_frames - 1);

  LabelSequence labels;
  labels.labels.reserve(static_cast<std::size_t>(n_frames));
  int prev = -1;
  for (std::size_t k = 0; k < spans.size(); ++k) {
    const int b = std::max(prev, bounds[k]);
    labels.labels.insert(labels.labels.end(), static_cast<std::size_t>(b - prev), spans[k].label);
    prev = b;
  }
  return labels_to_segments(labels);
}

/// tr(fnr(swme(labels))). Sequences shorter than the base window use a
/// window equal to their length; a single frame is returned as-is.
inline Timeline heuristic_segment(const LabelSequence& seq, const HeuristicConfig& cfg = {}) {
  cfg.validate();
  if (seq.labels.empty()) fail(ErrorKind::kInvalidArgument, "empty sequence");
  Timeline out;
  if (seq.size() == 1) {
    out = labels_to_segments(seq);
  } else {
    const int window = std::min(base_window(seq, cfg), static_cast<int>(seq.size()));
    out = tr(fnr(swme(seq, window, cfg), cfg), static_cast<int>(seq.size()));
  }
  out.fps = seq.fps;
  return out;
}

}  // namespace skillseg
