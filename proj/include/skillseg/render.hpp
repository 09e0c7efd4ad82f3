// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "skillseg/core_model.hpp"
#include "skillseg/error.hpp"

namespace skillseg {

struct TimelineRow {
  std::string name;  // row caption, e.g. "raw", "viterbi", "gt"
  Timeline timeline;
};

struct HoldTime {
  ClassId label;
  int start;
  int end;
  double seconds;  // rounded to 0.01 s
};

inline double round_centi(double v) { return std::round(v * 100.0) / 100.0; }

/// Skill segments of a timeline with their hold durations; NONE is skipped.
inline std::vector<HoldTime> hold_times(const Timeline& t) {
  require(t.fps > 0, "fps must be positive");
  std::vector<HoldTime> out;
  for (const Segment& s : t.segments) {
    if (s.label == kNoneClass) continue;
    out.push_back({s.label, s.start, s.end, round_centi(s.duration_seconds(t.fps))});
  }
  return out;
}

inline char class_glyph(ClassId c) {
  static constexpr std::array<char, kNumClasses> kGlyphs = {'B', 'F', 'G', 'I', 'M', 'O', 'H', 'P', 'V', '.'};
  return kGlyphs[static_cast<std::size_t>(c)];
}

namespace detail {

inline std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", round_centi(s));
  return buf;
}

inline int max_frames(const std::vector<TimelineRow>& rows) {
  int n = 0;
  for (const auto& r : rows) n = std::max(n, r.timeline.n_frames);
  return n;
}

}  // namespace detail

/// Stacked character strips (one glyph per column, columns scaled to the
/// longest timeline), then each row's segment list and hold-time listing.
inline std::string render_text(const std::vector<TimelineRow>& rows, int columns = 80) {
  require(!rows.empty(), "render: no timelines");
  require(columns >= 1, "render: columns must be >= 1");
  const int total = detail::max_frames(rows);
  std::size_t name_w = 0;
  for (const auto& r : rows) name_w = std::max(name_w, r.name.size());

  std::string out;
  for (const auto& r : rows) {
    check_contiguous(r.timeline);
    std::string strip(static_cast<std::size_t>(columns), ' ');
    for (const Segment& s : r.timeline.segments) {
      const int c0 = static_cast<int>(static_cast<long long>(s.start) * columns / total);
      const int c1 = std::max(c0 + 1, static_cast<int>(static_cast<long long>(s.end + 1) * columns / total));
      for (int c = c0; c < c1 && c < columns; ++c) strip[static_cast<std::size_t>(c)] = class_glyph(s.label);
    }
    out += r.name + std::string(name_w - r.name.size(), ' ') + " |" + strip + "|\n";
  }
  out += "\n";
  for (const auto& r : rows) {
    out += r.name + ": " + std::to_string(r.timeline.segments.size()) + " segments, " +
           std::to_string(r.timeline.n_frames) + " frames @ " + std::to_string(static_cast<int>(r.timeline.fps)) +
           " fps\n";
    for (const Segment& s : r.timeline.segments) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "  %-4s %6d-%-6d %s\n", std::string(class_name(s.label)).c_str(), s.start,
                    s.end, detail::fmt_seconds(s.duration_seconds(r.timeline.fps)).c_str());
      out += buf;
    }
    const auto holds = hold_times(r.timeline);
    double sum = 0;
    out += "  hold times:";
    if (holds.empty()) out += " none";
    for (const auto& h : holds) {
      out += " " + std::string(class_name(h.label)) + "=" + detail::fmt_seconds(h.seconds);
      sum += h.seconds;
    }
    out += "\n  total hold: " + detail::fmt_seconds(sum) + "\n";
  }
  return out;
}

inline const char* class_color(ClassId c) {
  static constexpr std::array<const char*, kNumClasses> kColors = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
      "#8c564b", "#e377c2", "#bcbd22", "#17becf", "#d9d9d9"};
  return kColors[static_cast<std::size_t>(c)];
}

/// One horizontal strip per row with class and hold duration written on each
/// segment, and a hold-time listing per row on the left.
inline std::string render_svg(const std::vector<TimelineRow>& rows, int strip_width = 960) {
  require(!rows.empty(), "render: no timelines");
  const int total = detail::max_frames(rows);
  const int list_w = 220;
  const int row_h = 40;
  const int gap = 14;
  const int height = static_cast<int>(rows.size()) * (row_h + gap) + gap;
  std::string svg;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" font-family=\"sans-serif\" "
                "font-size=\"11\">\n",
                list_w + strip_width + 20, height);
  svg += buf;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& t = rows[r].timeline;
    check_contiguous(t);
    const int y = gap + static_cast<int>(r) * (row_h + gap);
    std::string listing;
    for (const auto& h : hold_times(t))
      listing += std::string(class_name(h.label)) + " " + detail::fmt_seconds(h.seconds) + "  ";
    std::snprintf(buf, sizeof buf, "  <text x=\"4\" y=\"%d\" font-weight=\"bold\">%s</text>\n", y + 14,
                  rows[r].name.c_str());
    svg += buf;
    std::snprintf(buf, sizeof buf, "  <text x=\"4\" y=\"%d\">%s</text>\n", y + 30, listing.c_str());
    svg += buf;
    for (const Segment& s : t.segments) {
      const double x0 = list_w + static_cast<double>(s.start) * strip_width / total;
      const double w = static_cast<double>(s.duration_frames()) * strip_width / total;
      std::snprintf(buf, sizeof buf,
                    "  <rect x=\"%.2f\" y=\"%d\" width=\"%.2f\" height=\"%d\" fill=\"%s\" stroke=\"#fff\">"
                    "<title>%s %d-%d %s</title></rect>\n",
                    x0, y, w, row_h, class_color(s.label), std::string(class_name(s.label)).c_str(), s.start, s.end,
                    detail::fmt_seconds(s.duration_seconds(t.fps)).c_str());
      svg += buf;
      std::snprintf(buf, sizeof buf, "  <text x=\"%.2f\" y=\"%d\">%s %s</text>\n", x0 + 3, y + row_h / 2 + 4,
                    std::string(class_name(s.label)).c_str(),
                    detail::fmt_seconds(s.duration_seconds(t.fps)).c_str());
      svg += buf;
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace skillseg
