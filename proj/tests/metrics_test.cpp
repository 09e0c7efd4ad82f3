// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "skillseg/metrics.hpp"

#include <gtest/gtest.h>

#include "skillseg/rng.hpp"
#include "skillseg/synth.hpp"

namespace skillseg {
namespace {

LabelSequence seq(std::vector<ClassId> labels) { return {std::move(labels), kDefaultFps}; }

std::vector<Timeline> one(Timeline t) { return {std::move(t)}; }

// Reference SF1 by exhaustive search over all one-to-one matchings, used for
// tiny cases. Independent of the greedy matcher.
long best_matching(const std::vector<Segment>& p, const std::vector<Segment>& g, double t, std::size_t i,
                   std::vector<bool>& used) {
  if (i == p.size()) return 0;
  long best = best_matching(p, g, t, i + 1, used);
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (used[j] || segment_iou(p[i], g[j]) < t) continue;
    used[j] = true;
    best = std::max(best, 1 + best_matching(p, g, t, i + 1, used));
    used[j] = false;
  }
  return best;
}

TEST(FrameMetricsTest, PerfectAndComplement) {
  const auto gt = seq({0, 0, 1, 1, 2, 9});
  const auto perfect = frame_metrics(gt, gt);
  EXPECT_DOUBLE_EQ(perfect.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(perfect.macro_f1, 1.0);
  EXPECT_EQ(perfect.confusion[1][1], 2);

  LabelSequence wrong = gt;
  for (auto& y : wrong.labels) y = (y + 1) % kNumClasses;
  const auto r = frame_metrics(wrong, gt);
  EXPECT_DOUBLE_EQ(r.accuracy, 0.0);
  EXPECT_DOUBLE_EQ(r.macro_f1, 0.0);
}

TEST(FrameMetricsTest, SevenOfTen) {
  const auto gt = seq({0, 0, 0, 0, 0, 1, 1, 1, 1, 1});
  const auto pred = seq({0, 0, 0, 0, 1, 1, 1, 1, 0, 0});
  const auto r = frame_metrics(pred, gt);
  EXPECT_DOUBLE_EQ(r.accuracy, 0.7);
  EXPECT_EQ(r.confusion[0][1], 1);  // gt 0 predicted 1
  EXPECT_EQ(r.confusion[1][0], 2);
  EXPECT_DOUBLE_EQ(r.per_class[0].precision, 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(r.per_class[0].recall, 4.0 / 5.0);
  EXPECT_DOUBLE_EQ(r.per_class[1].precision, 3.0 / 4.0);
  EXPECT_EQ(r.per_class[5].support, 0);
  EXPECT_FALSE(r.per_class[5].present());
  EXPECT_THROW(frame_metrics(seq({0}), gt), Error);
}

TEST(ThresholdGridTest, HundredSteps) {
  const auto g = threshold_grid();
  ASSERT_EQ(g.size(), 100u);
  EXPECT_DOUBLE_EQ(g.front(), 0.01);
  EXPECT_DOUBLE_EQ(g[49], 0.5);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
}

TEST(SegmentF1Test, PerfectPredictionScoresOne) {
  Rng rng(1);
  SynthConfig cfg;
  std::vector<Timeline> gts;
  for (int v = 0; v < 5; ++v) gts.push_back(gen_timeline(cfg, rng));
  const auto grid = threshold_grid();
  const auto r = segment_report(gts, gts, grid);
  EXPECT_DOUBLE_EQ(r.masf1, 1.0);
  for (ClassId c = 0; c < kNumClasses; ++c) {
    const auto& a = r.per_class_asf1[static_cast<std::size_t>(c)];
    if (a) {
      EXPECT_DOUBLE_EQ(*a, 1.0);
    }
  }
  for (double v : r.mean_sf1_curve) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(SegmentF1Test, HalfOverlap) {
  // gt 0..19, pred 0..9: IoU exactly 0.5.
  const auto gt = one(Timeline{{{7, 0, 19}, {9, 20, 39}}, 40});
  const auto pred = one(Timeline{{{7, 0, 9}, {9, 10, 39}}, 40});
  EXPECT_DOUBLE_EQ(*sf1(pred, gt, 7, 0.4), 1.0);
  EXPECT_DOUBLE_EQ(*sf1(pred, gt, 7, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(*sf1(pred, gt, 7, 0.6), 0.0);
  const auto grid = threshold_grid();
  EXPECT_NEAR(*asf1(pred, gt, 7, grid), 0.50, 1e-12);
}

TEST(SegmentF1Test, AbsentClassIsUndefinedAndExcluded) {
  const auto gt = one(Timeline{{{7, 0, 19}}, 20});
  EXPECT_FALSE(sf1(gt, gt, 3, 0.5).has_value());
  const auto grid = threshold_grid();
  const auto r = segment_report(gt, gt, grid);
  EXPECT_EQ(r.n_classes_considered, 1);
  EXPECT_DOUBLE_EQ(r.masf1, 1.0);
}

TEST(SegmentF1Test, DisjointClassesScoreZero) {
  const auto gt = one(Timeline{{{0, 0, 9}, {1, 10, 19}}, 20});
  const auto pred = one(Timeline{{{2, 0, 9}, {3, 10, 19}}, 20});
  EXPECT_DOUBLE_EQ(masf1(pred, gt), 0.0);
  EXPECT_EQ(segment_report(pred, gt, threshold_grid()).n_classes_considered, 4);
}

TEST(SegmentF1Test, MatchesAreOneToOneAndPooledPerVideo) {
  // Two short predictions inside one long gt segment: only one may match.
  const auto gt = one(Timeline{{{4, 0, 19}}, 20});
  const auto pred = one(Timeline{{{4, 0, 9}, {9, 10, 10}, {4, 11, 19}}, 20});
  // 1 match of 2 predictions and 1 gt: P = 0.5, R = 1.
  EXPECT_NEAR(*sf1(pred, gt, 4, 0.3), 2 * 0.5 * 1.0 / 1.5, 1e-12);

  // The same segment in a different video never matches.
  const std::vector<Timeline> p2{Timeline{{{4, 0, 9}}, 10}, Timeline{{{9, 0, 9}}, 10}};
  const std::vector<Timeline> g2{Timeline{{{9, 0, 9}}, 10}, Timeline{{{4, 0, 9}}, 10}};
  EXPECT_DOUBLE_EQ(*sf1(p2, g2, 4, 0.1), 0.0);
}

TEST(SegmentF1Test, GreedyAgreesWithExhaustiveMatching) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = uniform_int(rng, 20, 60);
    auto random_tl = [&] {
      LabelSequence s;
      ClassId cur = uniform_int(rng, 0, 2);
      for (int i = 0; i < n; ++i) {
        if (bernoulli(rng, 0.15)) cur = uniform_int(rng, 0, 2);
        s.labels.push_back(cur);
      }
      return labels_to_segments(s);
    };
    const auto p = one(random_tl());
    const auto g = one(random_tl());
    for (ClassId c = 0; c < 3; ++c) {
      std::vector<Segment> ps, gs;
      for (const auto& s : p[0].segments) if (s.label == c) ps.push_back(s);
      for (const auto& s : g[0].segments) if (s.label == c) gs.push_back(s);
      if (ps.size() > 8 || gs.empty() || ps.empty()) continue;
      // Same-class segments within one timeline are disjoint, so at IoU > 0.5
      // each segment has at most one partner and greedy is optimal.
      for (double t : {0.51, 0.75, 1.0}) {
        std::vector<bool> used(gs.size(), false);
        const long m = best_matching(ps, gs, t, 0, used);
        EXPECT_EQ(class_matches(p, g, c).matches_at(t), m) << trial;
      }
    }
  }
}

TEST(SegmentF1Test, NonIncreasingInThreshold) {
  Rng rng(5);
  SynthConfig cfg;
  for (int trial = 0; trial < 20; ++trial) {
    const Timeline gt = gen_timeline(cfg, rng);
    const auto noisy = corrupt_labels(segments_to_labels(gt), 0.02, kNumClasses, rng);
    const auto p = one(labels_to_segments(noisy));
    const auto g = one(gt);
    for (ClassId c = 0; c < kNumClasses; ++c) {
      const auto cm = class_matches(p, g, c);
      if (!cm.defined()) continue;
      double prev = 2;
      for (double t : threshold_grid()) {
        const double v = *cm.sf1(t);
        EXPECT_LE(v, prev);
        EXPECT_GE(v, 0.0);
        prev = v;
      }
    }
  }
}

TEST(SegmentF1Test, Errors) {
  const auto gt = one(Timeline{{{7, 0, 19}}, 20});
  EXPECT_THROW(sf1(gt, gt, 7, 0.0), Error);
  EXPECT_THROW(sf1(gt, gt, 7, 1.5), Error);
  EXPECT_THROW(masf1(gt, one(Timeline{{{7, 0, 9}}, 10})), Error);
  EXPECT_THROW(masf1(gt, std::vector<Timeline>{}), Error);
}

TEST(EdgeAccuracyTest, PerfectPrediction) {
  const Timeline gt{{{9, 0, 29}, {7, 30, 79}}, 80};
  for (const auto& b : edge_distance_accuracy(segments_to_labels(gt), gt)) {
    EXPECT_GT(b.frames, 0);
    EXPECT_DOUBLE_EQ(b.accuracy(), 1.0);
  }
}

TEST(EdgeAccuracyTest, BoundaryErrorsOnlyHitFirstBin) {
  const Timeline gt{{{9, 0, 29}, {7, 30, 79}}, 80};
  auto pred = segments_to_labels(gt);
  pred.labels[28] = pred.labels[29] = 7;  // boundary drawn two frames early
  const auto bins = edge_distance_accuracy(pred, gt);
  ASSERT_GE(bins.size(), 3u);
  EXPECT_EQ(bins[0].min_distance, 0);
  EXPECT_EQ(bins[0].max_distance, 4);
  EXPECT_LT(bins[0].accuracy(), 1.0);
  EXPECT_EQ(bins[0].frames - bins[0].correct, 2);
  for (std::size_t b = 1; b < bins.size(); ++b) EXPECT_DOUBLE_EQ(bins[b].accuracy(), 1.0);
}

TEST(EdgeAccuracyTest, BinCountsSumToFrames) {
  const Timeline gt{{{3, 0, 0}, {9, 1, 10}, {3, 11, 23}}, 24};
  const auto bins = edge_distance_accuracy(segments_to_labels(gt), gt, 2);
  long total = 0;
  for (const auto& b : bins) total += b.frames;
  EXPECT_EQ(total, 24);
  // The single-frame segment sits at distance 0.
  EXPECT_GE(bins[0].frames, 1);
  EXPECT_THROW(edge_distance_accuracy(seq({3}), gt), Error);
  EXPECT_THROW(EdgeHistogram(0), Error);
}

}  // namespace
}  // namespace skillseg
