// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "skillseg/core_model.hpp"
#include "skillseg/error.hpp"
#include "skillseg/prob_sequence.hpp"
#include "skillseg/rng.hpp"

namespace skillseg {

/// Synthetic videos alternate NONE (the last class id) with skill segments.
struct SynthConfig {
  int n_videos = 50;
  int frames_min = 300;
  int frames_max = 900;
  int segment_min = 72;
  int segment_max = 208;
  int n_classes = kNumClasses;
  double noise = 0.05;  // per-frame probability that the peak moves to a wrong class
  double alpha = 0.6;   // probability mass on the peak class
  bool edge_biased = false;
  int edge_radius = 5;          // frames with edge distance below this get boosted noise
  double edge_multiplier = 3.0;
  double fps = kDefaultFps;
  std::uint64_t seed = 0;

  int none_class() const { return n_classes - 1; }

  void validate() const {
    require(n_videos >= 0, "synth: n_videos must be >= 0");
    require(n_classes >= 2 && n_classes <= kNumClasses, "synth: class count must be in [2, 10]");
    require(segment_min >= 1 && segment_min <= segment_max, "synth: infeasible segment-length range");
    require(frames_min >= 1 && frames_min <= frames_max, "synth: infeasible frame range");
    // Some segment count k must satisfy k * segment_min <= frames_max and k * segment_max >= frames_min.
    const int k_lo = (frames_min + segment_max - 1) / segment_max;
    const int k_hi = frames_max / segment_min;
    require(k_lo <= k_hi, "synth: infeasible ranges (no segment count fits the frame range)");
    require(noise >= 0 && noise < 1, "synth: noise must be in [0, 1)");
    require(alpha > 1.0 / n_classes && alpha <= 1.0, "synth: alpha must be in (1/K, 1]");
    require(edge_radius >= 0 && edge_multiplier >= 0, "synth: edge parameters must be non-negative");
    require(fps > 0, "synth: fps must be positive");
  }
};

/// Draws segment lengths until the total reaches frames_min, rejecting draws
/// that overshoot frames_max. The first segment is NONE or a skill with equal
/// probability; skills are uniform over the non-NONE classes.
inline Timeline gen_timeline(const SynthConfig& cfg, Rng& rng) {
  cfg.validate();
  std::vector<int> lengths;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 10000) fail(ErrorKind::kInvalidArgument, "synth: infeasible ranges");
    lengths.clear();
    int total = 0;
    while (total < cfg.frames_min) {
      lengths.push_back(uniform_int(rng, cfg.segment_min, cfg.segment_max));
      total += lengths.back();
    }
    if (total <= cfg.frames_max) break;
  }
  Timeline t;
  t.fps = cfg.fps;
  bool skill = bernoulli(rng, 0.5);
  int start = 0;
  for (int len : lengths) {
    const ClassId label = skill ? uniform_int(rng, 0, cfg.n_classes - 2) : cfg.none_class();
    t.segments.push_back({label, start, start + len - 1});
    start += len;
    skill = !skill;
  }
  t.n_frames = start;
  return t;
}

/// Per-frame noise probability, boosted near segment edges when requested.
inline double frame_noise(const SynthConfig& cfg, const Segment& s, int frame) {
  if (!cfg.edge_biased) return cfg.noise;
  const int d = std::min(frame - s.start, s.end - frame);
  return d < cfg.edge_radius ? std::min(1.0, cfg.noise * cfg.edge_multiplier) : cfg.noise;
}

inline ClassId random_other_class(ClassId c, int n_classes, Rng& rng) {
  const ClassId r = uniform_int(rng, 0, n_classes - 2);
  return r >= c ? r + 1 : r;
}

/// Rows put alpha on the peak class and spread the rest uniformly. The peak
/// is the true class, or with the frame's noise probability a uniformly
/// drawn wrong class.
inline ProbSequence gen_probs(const Timeline& gt, const SynthConfig& cfg, Rng& rng) {
  cfg.validate();
  check_contiguous(gt);
  const int k = cfg.n_classes;
  const double rest = (1.0 - cfg.alpha) / (k - 1);
  ProbSequence probs(gt.n_frames, k);
  for (const Segment& s : gt.segments) {
    require(s.label < k, "synth: timeline class outside configured class count");
    for (int i = s.start; i <= s.end; ++i) {
      ClassId peak = s.label;
      if (bernoulli(rng, frame_noise(cfg, s, i))) peak = random_other_class(s.label, k, rng);
      auto row = probs.row(i);
      std::fill(row.begin(), row.end(), rest);
      row[static_cast<std::size_t>(peak)] = cfg.alpha;
    }
  }
  return probs;
}

/// Each frame independently moves to a uniformly drawn different class with
/// probability p.
inline LabelSequence corrupt_labels(const LabelSequence& labels, double p, int n_classes, Rng& rng) {
  require(p >= 0 && p < 1, "corrupt_labels: p must be in [0, 1)");
  require(n_classes >= 2 && n_classes <= kNumClasses, "corrupt_labels: class count must be in [2, 10]");
  LabelSequence out = labels;
  for (ClassId& y : out.labels) {
    require(y >= 0 && y < n_classes, "corrupt_labels: class id out of range");
    if (bernoulli(rng, p)) y = random_other_class(y, n_classes, rng);
  }
  return out;
}

struct SynthVideo {
  std::string video_id;
  Timeline gt;
  ProbSequence probs;
};

/// All videos from one generator seeded with cfg.seed.
inline std::vector<SynthVideo> gen_dataset(const SynthConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  std::vector<SynthVideo> out;
  for (int v = 0; v < cfg.n_videos; ++v) {
    SynthVideo sv;
    char id[32];
    std::snprintf(id, sizeof id, "synth_%04d", v);
    sv.video_id = id;
    sv.gt = gen_timeline(cfg, rng);
    sv.probs = gen_probs(sv.gt, cfg, rng);
    out.push_back(std::move(sv));
  }
  return out;
}

}  // namespace skillseg
