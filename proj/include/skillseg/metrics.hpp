// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "skillseg/core_model.hpp"
#include "skillseg/error.hpp"

namespace skillseg {

// ---------------------------------------------------------------------------
// Frame-level metrics

struct ClassScores {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  long support = 0;     // ground-truth frames
  long predicted = 0;   // predicted frames
  bool present() const { return support > 0 || predicted > 0; }
};

struct FrameReport {
  long n_frames = 0;
  double accuracy = 0;
  std::vector<ClassScores> per_class;
  double macro_precision = 0;  // means over present classes
  double macro_recall = 0;
  double macro_f1 = 0;
  std::vector<std::vector<long>> confusion;  // [ground truth][prediction]
};

/// Accumulates frame counts over any number of videos.
class FrameMetrics {
 public:
  explicit FrameMetrics(int n_classes = kNumClasses)
      : confusion_(static_cast<std::size_t>(n_classes), std::vector<long>(static_cast<std::size_t>(n_classes), 0)) {}

  void add(const LabelSequence& pred, const LabelSequence& gt) {
    if (pred.size() != gt.size())
      fail(ErrorKind::kInvalidArgument, "length mismatch: " + std::to_string(pred.size()) + " predicted vs " +
                                            std::to_string(gt.size()) + " ground-truth frames");
    const int k = static_cast<int>(confusion_.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
      const ClassId p = pred.labels[i];
      const ClassId g = gt.labels[i];
      require(p >= 0 && p < k && g >= 0 && g < k, "frame metrics: class id out of range");
      ++confusion_[static_cast<std::size_t>(g)][static_cast<std::size_t>(p)];
    }
  }

  FrameReport report() const {
    const std::size_t k = confusion_.size();
    FrameReport r;
    r.confusion = confusion_;
    r.per_class.resize(k);
    long correct = 0;
    for (std::size_t g = 0; g < k; ++g) {
      for (std::size_t p = 0; p < k; ++p) {
        r.n_frames += confusion_[g][p];
        r.per_class[g].support += confusion_[g][p];
        r.per_class[p].predicted += confusion_[g][p];
      }
      correct += confusion_[g][g];
    }
    r.accuracy = r.n_frames ? static_cast<double>(correct) / static_cast<double>(r.n_frames) : 0.0;
    int present = 0;
    for (std::size_t c = 0; c < k; ++c) {
      auto& s = r.per_class[c];
      const double tp = static_cast<double>(confusion_[c][c]);
      s.precision = s.predicted ? tp / static_cast<double>(s.predicted) : 0.0;
      s.recall = s.support ? tp / static_cast<double>(s.support) : 0.0;
      s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
      if (s.present()) {
        ++present;
        r.macro_precision += s.precision;
        r.macro_recall += s.recall;
        r.macro_f1 += s.f1;
      }
    }
    if (present) {
      r.macro_precision /= present;
      r.macro_recall /= present;
      r.macro_f1 /= present;
    }
    return r;
  }

 private:
  std::vector<std::vector<long>> confusion_;
};

inline FrameReport frame_metrics(const LabelSequence& pred, const LabelSequence& gt, int n_classes = kNumClasses) {
  FrameMetrics m(n_classes);
  m.add(pred, gt);
  return m.report();
}

// ---------------------------------------------------------------------------
// Segment-level F1
//
// A predicted segment matches a ground-truth segment of the same class in the
// same video when their IoU is at least t. Matching is one-to-one, greedy in
// descending IoU. Counts are pooled over all videos before precision and
// recall are formed.

/// {1/count, 2/count, ..., 1}
inline std::vector<double> threshold_grid(int count = 100) {
  require(count >= 1, "threshold count must be >= 1");
  std::vector<double> t;
  for (int i = 1; i <= count; ++i) t.push_back(static_cast<double>(i) / count);
  return t;
}

/// Pooled matching result for one class: the IoU of every pair the greedy
/// matcher accepts (descending), plus segment counts.
struct ClassMatches {
  long n_pred = 0;
  long n_gt = 0;
  std::vector<double> matched_iou;

  bool defined() const { return n_pred > 0 || n_gt > 0; }

  /// Greedy over pairs with IoU >= t is the greedy over all pairs restricted
  /// to that prefix, so the match count at t is a simple count.
  long matches_at(double t) const {
    return static_cast<long>(std::count_if(matched_iou.begin(), matched_iou.end(), [t](double v) { return v >= t; }));
  }

  std::optional<double> sf1(double t) const {
    if (!defined()) return std::nullopt;
    const double m = static_cast<double>(matches_at(t));
    const double precision = n_pred ? m / static_cast<double>(n_pred) : 0.0;
    const double recall = n_gt ? m / static_cast<double>(n_gt) : 0.0;
    return precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
  }
};

inline void check_pairing(std::span<const Timeline> pred, std::span<const Timeline> gt) {
  if (pred.size() != gt.size())
    fail(ErrorKind::kInvalidArgument, "prediction and ground-truth sets differ in size");
  for (std::size_t v = 0; v < pred.size(); ++v) {
    if (pred[v].n_frames != gt[v].n_frames)
      fail(ErrorKind::kInvalidArgument, "length mismatch in video " + std::to_string(v));
  }
}

inline ClassMatches class_matches(std::span<const Timeline> pred, std::span<const Timeline> gt, ClassId cls) {
  check_pairing(pred, gt);
  ClassMatches out;
  for (std::size_t v = 0; v < pred.size(); ++v) {
    std::vector<const Segment*> ps;
    std::vector<const Segment*> gs;
    for (const auto& s : pred[v].segments) if (s.label == cls) ps.push_back(&s);
    for (const auto& s : gt[v].segments) if (s.label == cls) gs.push_back(&s);
    out.n_pred += static_cast<long>(ps.size());
    out.n_gt += static_cast<long>(gs.size());

    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = 0; j < gs.size(); ++j) {
        const double iou = segment_iou(*ps[i], *gs[j]);
        if (iou > 0) pairs.emplace_back(iou, i, j);
      }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
    std::vector<bool> p_used(ps.size(), false);
    std::vector<bool> g_used(gs.size(), false);
    for (const auto& [iou, i, j] : pairs) {
      if (p_used[i] || g_used[j]) continue;
      p_used[i] = g_used[j] = true;
      out.matched_iou.push_back(iou);
    }
  }
  std::sort(out.matched_iou.begin(), out.matched_iou.end(), std::greater<>());
  return out;
}

/// SF1 of one class at threshold t in (0, 1]; nullopt when the class has no
/// segment on either side.
inline std::optional<double> sf1(std::span<const Timeline> pred, std::span<const Timeline> gt, ClassId cls,
                                 double t) {
  require(t > 0 && t <= 1, "threshold must be in (0, 1]");
  return class_matches(pred, gt, cls).sf1(t);
}

inline std::optional<double> asf1(std::span<const Timeline> pred, std::span<const Timeline> gt, ClassId cls,
                                  std::span<const double> thresholds) {
  const auto cm = class_matches(pred, gt, cls);
  if (!cm.defined()) return std::nullopt;
  double sum = 0;
  for (double t : thresholds) sum += *cm.sf1(t);
  return sum / static_cast<double>(thresholds.size());
}

struct SegReport {
  std::vector<double> thresholds;
  std::vector<std::optional<double>> per_class_asf1;
  std::vector<std::vector<double>> sf1_curves;  // per class, empty when undefined
  std::vector<double> mean_sf1_curve;           // mean over defined classes per threshold
  double masf1 = 0;
  int n_classes_considered = 0;
};

inline SegReport segment_report(std::span<const Timeline> pred, std::span<const Timeline> gt,
                                std::span<const double> thresholds, int n_classes = kNumClasses) {
  require(!thresholds.empty(), "empty threshold set");
  SegReport r;
  r.thresholds.assign(thresholds.begin(), thresholds.end());
  r.per_class_asf1.resize(static_cast<std::size_t>(n_classes));
  r.sf1_curves.resize(static_cast<std::size_t>(n_classes));
  r.mean_sf1_curve.assign(thresholds.size(), 0.0);
  for (ClassId c = 0; c < n_classes; ++c) {
    const auto cm = class_matches(pred, gt, c);
    if (!cm.defined()) continue;
    auto& curve = r.sf1_curves[static_cast<std::size_t>(c)];
    double sum = 0;
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      curve.push_back(*cm.sf1(thresholds[i]));
      sum += curve.back();
      r.mean_sf1_curve[i] += curve.back();
    }
    r.per_class_asf1[static_cast<std::size_t>(c)] = sum / static_cast<double>(thresholds.size());
    r.masf1 += sum / static_cast<double>(thresholds.size());
    ++r.n_classes_considered;
  }
  if (r.n_classes_considered) {
    r.masf1 /= r.n_classes_considered;
    for (double& v : r.mean_sf1_curve) v /= r.n_classes_considered;
  }
  return r;
}

inline double masf1(std::span<const Timeline> pred, std::span<const Timeline> gt,
                    std::span<const double> thresholds) {
  return segment_report(pred, gt, thresholds).masf1;
}

inline double masf1(std::span<const Timeline> pred, std::span<const Timeline> gt) {
  const auto grid = threshold_grid();
  return masf1(pred, gt, grid);
}

// ---------------------------------------------------------------------------
// Accuracy against distance from ground-truth segment edges

struct EdgeBin {
  int min_distance = 0;  // inclusive
  int max_distance = 0;  // inclusive
  long frames = 0;
  long correct = 0;
  double accuracy() const { return frames ? static_cast<double>(correct) / static_cast<double>(frames) : 0.0; }
};

/// Distance of frame i inside ground-truth segment s: min(i - s.start, s.end - i).
class EdgeHistogram {
 public:
  explicit EdgeHistogram(int bin_width = 5) : bin_width_(bin_width) {
    require(bin_width >= 1, "bin width must be >= 1");
  }

  void add(const LabelSequence& pred, const Timeline& gt) {
    check_contiguous(gt);
    if (static_cast<int>(pred.size()) != gt.n_frames)
      fail(ErrorKind::kInvalidArgument, "length mismatch: " + std::to_string(pred.size()) + " predicted vs " +
                                            std::to_string(gt.n_frames) + " ground-truth frames");
    for (const Segment& s : gt.segments) {
      for (int i = s.start; i <= s.end; ++i) {
        const int d = std::min(i - s.start, s.end - i);
        const auto bin = static_cast<std::size_t>(d / bin_width_);
        if (bin >= bins_.size()) {
          for (std::size_t b = bins_.size(); b <= bin; ++b) {
            const int lo = static_cast<int>(b) * bin_width_;
            bins_.push_back({lo, lo + bin_width_ - 1, 0, 0});
          }
        }
        ++bins_[bin].frames;
        bins_[bin].correct += pred.labels[static_cast<std::size_t>(i)] == s.label;
      }
    }
  }

  const std::vector<EdgeBin>& bins() const { return bins_; }

 private:
  int bin_width_;
  std::vector<EdgeBin> bins_;
};

inline std::vector<EdgeBin> edge_distance_accuracy(const LabelSequence& pred, const Timeline& gt, int bin_width = 5) {
  EdgeHistogram h(bin_width);
  h.add(pred, gt);
  return h.bins();
}

}  // namespace skillseg
