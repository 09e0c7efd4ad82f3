// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "skillseg/heuristic.hpp"

#include <gtest/gtest.h>

#include "skillseg/rng.hpp"
#include "skillseg/synth.hpp"

namespace skillseg {
namespace {

constexpr ClassId A = 0;
constexpr ClassId B = 1;

LabelSequence seq(std::vector<ClassId> labels) { return {std::move(labels), kDefaultFps}; }

LabelSequence repeat(std::initializer_list<std::pair<ClassId, int>> runs) {
  LabelSequence s;
  for (auto [c, n] : runs) s.labels.insert(s.labels.end(), static_cast<std::size_t>(n), c);
  return s;
}

std::vector<ClassId> classes_of(const std::vector<IntervalRecord>& recs) {
  std::vector<ClassId> out;
  for (const auto& r : recs) out.push_back(r.mode_class);
  return out;
}

std::vector<IntervalRecord> records_of(std::vector<ClassId> classes) {
  std::vector<IntervalRecord> out;
  for (std::size_t i = 0; i < classes.size(); ++i)
    out.push_back(IntervalRecord::span(classes[i], static_cast<int>(i) * 10, static_cast<int>(i) * 10 + 9));
  return out;
}

/// Random maximal timeline with every segment length in [lo, hi].
Timeline random_timeline(Rng& rng, int n_segments, int lo, int hi, int k = kNumClasses) {
  Timeline t;
  int start = 0;
  ClassId prev = -1;
  for (int s = 0; s < n_segments; ++s) {
    ClassId c;
    do c = uniform_int(rng, 0, k - 1);
    while (c == prev);
    const int len = uniform_int(rng, lo, hi);
    t.segments.push_back({c, start, start + len - 1});
    start += len;
    prev = c;
  }
  t.n_frames = start;
  return t;
}

TEST(BaseWindowTest, AllEqual) {
  // s = 0.5 + 99 * 0.14 / 100 = 0.6386, (1 - s) * 32 = 11.56
  EXPECT_EQ(base_window(LabelSequence{std::vector<ClassId>(100, A)}), 11);
}

TEST(BaseWindowTest, AllDifferent) {
  // s = 0.5 - 99 * 0.11 / 100 = 0.3911, (1 - s) * 32 = 19.48
  LabelSequence s;
  for (int i = 0; i < 100; ++i) s.labels.push_back(i % 2);
  EXPECT_EQ(base_window(s), 19);
}

TEST(BaseWindowTest, RangeAndRelabelInvariance) {
  Rng rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = uniform_int(rng, 32, 600);
    const double p_switch = uniform01(rng);
    LabelSequence s;
    ClassId cur = 0;
    for (int i = 0; i < n; ++i) {
      if (bernoulli(rng, p_switch)) cur = random_other_class(cur, kNumClasses, rng);
      s.labels.push_back(cur);
    }
    const int wb = base_window(s);
    EXPECT_GE(wb, 11);
    EXPECT_LE(wb, 19);
    LabelSequence relabeled = s;
    for (auto& y : relabeled.labels) y = (y + 3) % kNumClasses;
    EXPECT_EQ(base_window(relabeled), wb);
  }
}

TEST(BaseWindowTest, ShortInputs) {
  EXPECT_THROW(base_window(seq({A})), Error);
  HeuristicConfig tiny;
  tiny.m = 1;
  EXPECT_EQ(base_window(seq({A, A, A}), tiny), 2);  // clamped
}

TEST(SwmeTest, ConstantSequence) {
  const auto recs = swme(LabelSequence{std::vector<ClassId>(100, 4)});
  ASSERT_FALSE(recs.empty());
  for (const auto& r : recs) EXPECT_EQ(r.mode_class, 4);
  EXPECT_EQ(recs.back().window_end, 99);
}

TEST(SwmeTest, SingletonMinorityNeverWins) {
  const auto s = repeat({{A, 15}, {B, 1}, {A, 16}});
  ASSERT_GE(base_window(s), 11);
  for (const auto& r : swme(s)) EXPECT_EQ(r.mode_class, A);
}

TEST(SwmeTest, TieGrowsWindowToTheRight) {
  // Base window 4 over [A,A,B,B] is tied; one more frame makes B the mode.
  const auto s = seq({A, A, B, B, B, B, B, B});
  const auto recs = swme(s, 4);
  ASSERT_FALSE(recs.empty());
  EXPECT_EQ(recs[0], (IntervalRecord{B, 2, 4, 0, 4}));
}

TEST(SwmeTest, TieAtEndPicksLowestClass) {
  const auto recs = swme(seq({B, B, A, A}), 4);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].mode_class, A);
}

TEST(SwmeTest, RecordsAreOrderedOnNoisyInput) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const Timeline t = random_timeline(rng, uniform_int(rng, 1, 8), 30, 200);
    const auto noisy = corrupt_labels(segments_to_labels(t), 0.1, kNumClasses, rng);
    const auto recs = swme(noisy);
    ASSERT_FALSE(recs.empty());
    for (std::size_t i = 1; i < recs.size(); ++i) EXPECT_LE(recs[i - 1].idx_start, recs[i].idx_start);
    for (const auto& r : recs) {
      EXPECT_LE(r.window_start, r.idx_start);
      EXPECT_LE(r.idx_start, r.idx_end);
      EXPECT_LE(r.idx_end, r.window_end);
      EXPECT_LT(r.window_end, t.n_frames);
    }
  }
}

TEST(SwmeTest, RejectsShortInput) { EXPECT_THROW(swme(seq({A, A, A}), 5), Error); }

TEST(FnrTest, HandCases) {
  EXPECT_EQ(classes_of(fnr(records_of({A, A, B, A, A}))), (std::vector<ClassId>{A, A, A, A, A}));
  EXPECT_EQ(classes_of(fnr(records_of({A, A, A}))), (std::vector<ClassId>{A, A, A}));
  // Clamped windows: {A,A,A,B,B} for the first record, {A,A,B,B,B} for the second.
  EXPECT_EQ(classes_of(fnr(records_of({A, B}))), (std::vector<ClassId>{A, B}));
}

TEST(FnrTest, TieKeepsOriginalAndIndicesAreUnchanged) {
  const ClassId C = 2;
  // Window of record 2 is {A, B, C, A, B}: A and B tie, so C stays.
  const auto in = records_of({A, B, C, A, B});
  const auto out = fnr(in);
  EXPECT_EQ(out[2].mode_class, C);
  for (std::size_t i = 0; i < in.size(); ++i) {
    EXPECT_EQ(out[i].idx_start, in[i].idx_start);
    EXPECT_EQ(out[i].idx_end, in[i].idx_end);
  }
  EXPECT_THROW(fnr({}), Error);
}

TEST(TrTest, AdjacentMerge) {
  const std::vector<IntervalRecord> recs{IntervalRecord::span(A, 0, 10), IntervalRecord::span(A, 11, 20),
                                         IntervalRecord::span(B, 21, 30)};
  const auto t = tr(recs, 31);
  EXPECT_EQ(t.segments, (std::vector<Segment>{{A, 0, 20}, {B, 21, 30}}));
}

TEST(TrTest, MidpointSplitsUnobservedGap) {
  // Gap 9..12 split evenly.
  const auto t = tr({IntervalRecord::span(A, 0, 8), IntervalRecord::span(B, 13, 20)}, 21);
  EXPECT_EQ(t.segments, (std::vector<Segment>{{A, 0, 10}, {B, 11, 20}}));
  // Odd gap 9..11: the left span takes the extra frame.
  const auto u = tr({IntervalRecord::span(A, 0, 8), IntervalRecord::span(B, 12, 20)}, 21);
  EXPECT_EQ(u.segments, (std::vector<Segment>{{A, 0, 10}, {B, 11, 20}}));
}

TEST(TrTest, ObservedEdgeWins) {
  // B's first frame was seen inside a window starting at 5, so the boundary
  // sits right before it rather than at the gap midpoint.
  const auto t = tr({IntervalRecord::span(A, 0, 8), IntervalRecord{B, 11, 20, 5, 20}}, 21);
  EXPECT_EQ(t.segments, (std::vector<Segment>{{A, 0, 10}, {B, 11, 20}}));
  const auto u = tr({IntervalRecord{A, 0, 8, 0, 12}, IntervalRecord::span(B, 12, 20)}, 21);
  EXPECT_EQ(u.segments, (std::vector<Segment>{{A, 0, 8}, {B, 9, 20}}));
}

TEST(TrTest, SingleRecordCoversAll) {
  const auto t = tr({IntervalRecord::span(A, 2, 5)}, 10);
  EXPECT_EQ(t.segments, (std::vector<Segment>{{A, 0, 9}}));
}

TEST(TrTest, OverlappingSpansStayValid) {
  const auto t = tr({IntervalRecord::span(A, 0, 20), IntervalRecord::span(B, 5, 8), IntervalRecord::span(A, 9, 30)},
                    31);
  EXPECT_TRUE(is_valid_timeline(t));
}

TEST(HeuristicSegmentTest, ConstantInput) {
  const auto t = heuristic_segment(LabelSequence{std::vector<ClassId>(77, 7)});
  EXPECT_EQ(t.segments, (std::vector<Segment>{{7, 0, 76}}));
}

TEST(HeuristicSegmentTest, CleanInputReproducesTimeline) {
  const Timeline t{{{9, 0, 40}, {7, 41, 130}, {9, 131, 170}}, 171};
  EXPECT_EQ(heuristic_segment(segments_to_labels(t)), t);
}

TEST(HeuristicSegmentTest, IdempotentOnLongSegments) {
  Rng rng(99);
  const HeuristicConfig cfg;
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Timeline t = random_timeline(rng, uniform_int(rng, 1, 10), 29, 120);
    const auto labels = segments_to_labels(t);
    const int wb = base_window(labels, cfg);
    bool long_enough = true;
    for (const auto& s : t.segments) long_enough &= s.duration_frames() > 2 * wb + 2 * cfg.stride;
    if (!long_enough) continue;
    ++checked;
    ASSERT_EQ(heuristic_segment(labels, cfg), t) << "trial " << trial;
  }
  EXPECT_GT(checked, 300);
}

TEST(HeuristicSegmentTest, RemovesShortSpuriousRuns) {
  // Skill with scattered 1-3 frame bursts of class 1, as produced by a noisy
  // per-frame classifier.
  LabelSequence s = repeat({{9, 30}, {7, 150}, {9, 30}});
  Rng rng(4);
  for (int burst = 0; burst < 12; ++burst) {
    const int at = uniform_int(rng, 5, 200);
    const int len = uniform_int(rng, 1, 3);
    for (int i = at; i < at + len; ++i) s.labels[static_cast<std::size_t>(i)] = 1;
  }
  const auto t = heuristic_segment(s);
  for (const auto& seg : t.segments) EXPECT_NE(seg.label, 1);
  EXPECT_TRUE(is_valid_timeline(t));
}

TEST(HeuristicSegmentTest, AlwaysValidOnArbitraryInput) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = uniform_int(rng, 1, 300);
    LabelSequence s;
    for (int i = 0; i < n; ++i) s.labels.push_back(uniform_int(rng, 0, uniform_int(rng, 0, 9)));
    const auto t = heuristic_segment(s);
    ASSERT_TRUE(is_valid_timeline(t)) << "trial " << trial;
    EXPECT_EQ(t.n_frames, n);
  }
}

}  // namespace
}  // namespace skillseg
