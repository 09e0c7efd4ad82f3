// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "skillseg/pose_ingest.hpp"

#include <cstdio>
#include <set>

#include <gtest/gtest.h>

namespace skillseg {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("skillseg_ingest_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::vector<double> keypoints_with(int joint, double x, double y, double c) {
  std::vector<double> k(kNumFeatures, 0.0);
  k[3 * joint] = x;
  k[3 * joint + 1] = y;
  k[3 * joint + 2] = c;
  return k;
}

json openpose_record(const std::vector<double>& kp) {
  json people = json::array();
  if (!kp.empty()) people.push_back({{"person_id", {-1}}, {"pose_keypoints_2d", kp}});
  return {{"version", 1.3}, {"people", people}};
}

void write_frame(const fs::path& dir, const std::string& video, int idx, const json& rec) {
  char name[96];
  std::snprintf(name, sizeof name, "%s_%012d_keypoints.json", video.c_str(), idx);
  io::write_json(dir / name, rec);
}

TEST(ParsePoseFrameTest, MidpointNormalization) {
  const auto f = parse_pose_frame(openpose_record(keypoints_with(4, 480, 270, 0.7)), 960, 540);
  EXPECT_TRUE(f.detected);
  EXPECT_DOUBLE_EQ(f.features[12], 0.5);
  EXPECT_DOUBLE_EQ(f.features[13], 0.5);
  EXPECT_DOUBLE_EQ(f.features[14], 0.7);
}

TEST(ParsePoseFrameTest, BoundaryMapsToOne) {
  const auto f = parse_pose_frame(openpose_record(keypoints_with(0, 960, 540, 0.9)), 960, 540);
  EXPECT_DOUBLE_EQ(f.features[0], 1.0);
  EXPECT_DOUBLE_EQ(f.features[1], 1.0);
  EXPECT_DOUBLE_EQ(f.features[2], 0.9);
}

TEST(ParsePoseFrameTest, EmptyPeopleIsUndetected) {
  const auto f = parse_pose_frame(openpose_record({}), 960, 540);
  EXPECT_FALSE(f.detected);
  for (double v : f.features) EXPECT_EQ(v, 0.0);
}

TEST(ParsePoseFrameTest, Errors) {
  std::vector<double> short_kp(74, 1.0);
  try {
    parse_pose_frame(openpose_record(short_kp), 960, 540);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("malformed keypoints"), std::string::npos);
  }
  EXPECT_THROW(parse_pose_frame(openpose_record(keypoints_with(0, 1, 1, 1)), 0, 540), Error);
  EXPECT_THROW(parse_pose_frame(openpose_record(keypoints_with(0, 1, 1, 1)), 960, -1), Error);
  EXPECT_THROW(parse_pose_frame(json{{"nobody", 1}}, 960, 540), Error);
}

TEST(ParsePoseFrameTest, ResolutionIndependent) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const double w = uniform_real(rng, 100, 2000);
    const double h = uniform_real(rng, 100, 2000);
    const double scale = uniform_real(rng, 0.25, 8);
    std::vector<double> kp(kNumFeatures), scaled(kNumFeatures);
    for (int j = 0; j < kNumJoints; ++j) {
      kp[3 * j] = uniform_real(rng, 0, w);
      kp[3 * j + 1] = uniform_real(rng, 0, h);
      kp[3 * j + 2] = uniform01(rng);
      scaled[3 * j] = kp[3 * j] * scale;
      scaled[3 * j + 1] = kp[3 * j + 1] * scale;
      scaled[3 * j + 2] = kp[3 * j + 2];
    }
    const auto a = parse_pose_frame(std::span<const double>(kp), w, h);
    const auto b = parse_pose_frame(std::span<const double>(scaled), w * scale, h * scale);
    for (int i = 0; i < kNumFeatures; ++i) {
      EXPECT_NEAR(a.features[i], b.features[i], 1e-12);
      EXPECT_GE(a.features[i], 0.0);
      EXPECT_LE(a.features[i], 1.0);
    }
  }
}

TEST(LoadVideoFeaturesTest, PreservesCardinalityAndOrder) {
  TempDir dir;
  for (int i = 139; i >= 0; --i) write_frame(dir.path(), "PL_001", i, openpose_record(keypoints_with(0, i, 0, 1)));
  const auto seq = load_video_features(dir.path(), {960, 540, 24}, "PL_001");
  ASSERT_EQ(seq.size(), 140u);
  EXPECT_EQ(seq.video_id, "PL_001");
  for (int i = 0; i < 140; ++i) {
    EXPECT_DOUBLE_EQ(seq.frames[static_cast<std::size_t>(i)][0], i / 960.0);
    EXPECT_TRUE(seq.detected[static_cast<std::size_t>(i)]);
  }
}

TEST(LoadVideoFeaturesTest, MalformedFrameIsNamed) {
  TempDir dir;
  for (int i = 0; i < 10; ++i) {
    write_frame(dir.path(), "v", i,
                i == 7 ? openpose_record(std::vector<double>(12, 1.0)) : openpose_record(keypoints_with(0, 1, 1, 1)));
  }
  try {
    load_video_features(dir.path(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("frame 7"), std::string::npos) << e.what();
  }
}

TEST(LoadVideoFeaturesTest, MissingFrameReportsGap) {
  TempDir dir;
  for (int i : {0, 1, 2, 5, 6}) write_frame(dir.path(), "v", i, openpose_record({}));
  try {
    load_video_features(dir.path(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("missing frame 3-4"), std::string::npos) << e.what();
  }
}

TEST(LoadVideoFeaturesTest, AllUndetected) {
  TempDir dir;
  for (int i = 0; i < 12; ++i) write_frame(dir.path(), "v", i, openpose_record({}));
  io::write_json(dir.path() / "meta.json", {{"width", 960}, {"height", 540}, {"fps", 24}});
  const auto seq = load_video_features(dir.path(), read_video_meta(dir.path() / "meta.json"));
  ASSERT_EQ(seq.size(), 12u);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    EXPECT_FALSE(seq.detected[i]);
    for (double v : seq.frames[i]) EXPECT_EQ(v, 0.0);
  }
}

TEST(FeatureCacheTest, RoundTrip) {
  TempDir dir;
  FeatureSequence seq{"v", 24, {}, {}};
  for (int i = 0; i < 3; ++i) {
    FeatureVector f{};
    f[static_cast<std::size_t>(i)] = 0.125 * (i + 1);
    seq.frames.push_back(f);
    seq.detected.push_back(i != 1);
  }
  write_features(dir.path() / "f.json", seq);
  const auto back = read_features(dir.path() / "f.json");
  EXPECT_EQ(back.frames, seq.frames);
  EXPECT_EQ(back.detected, seq.detected);
}

TEST(LoadAnnotationTest, ValidThreeSegments) {
  TempDir dir;
  io::write_json(dir.path() / "a.json",
                 {{"video_id", "PL_007"}, {"fps", 24}, {"n_frames", 140}, {"md5", "d41d8cd98f00b204e9800998ecf8427e"},
                  {"segments",
                   {{{"class", "NONE"}, {"start_frame", 0}, {"end_frame", 23}},
                    {{"class", "PL"}, {"start_frame", 24}, {"end_frame", 119}},
                    {{"class", "NONE"}, {"start_frame", 120}, {"end_frame", 139}}}}});
  const auto gt = load_annotation(dir.path() / "a.json");
  EXPECT_EQ(gt.video_id, "PL_007");
  ASSERT_EQ(gt.timeline.segments.size(), 3u);
  EXPECT_EQ(gt.timeline.segments[1], (Segment{static_cast<ClassId>(SkillClass::kPL), 24, 119}));
  EXPECT_EQ(gt.md5, "d41d8cd98f00b204e9800998ecf8427e");
}

TEST(LoadAnnotationTest, Errors) {
  TempDir dir;
  auto write = [&](const json& segs, int n) {
    io::write_json(dir.path() / "a.json", {{"video_id", "x"}, {"fps", 24}, {"n_frames", n}, {"segments", segs}});
  };
  auto message = [&]() -> std::string {
    try {
      load_annotation(dir.path() / "a.json");
    } catch (const Error& e) {
      return e.what();
    }
    return "";
  };
  write({{{"class", "XYZ"}, {"start_frame", 0}, {"end_frame", 9}}}, 10);
  EXPECT_NE(message().find("unknown class"), std::string::npos);
  write({{{"class", "PL"}, {"start_frame", 0}, {"end_frame", 50}},
         {{"class", "NONE"}, {"start_frame", 60}, {"end_frame", 100}}},
        101);
  EXPECT_NE(message().find("gap at frame 51"), std::string::npos);
  write({{{"class", "PL"}, {"start_frame", 0}, {"end_frame", 120}}}, 100);
  EXPECT_NE(message().find("outside"), std::string::npos);
  EXPECT_THROW(load_annotation(dir.path() / "missing.json"), Error);
}

std::vector<std::string> make_ids(int n) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("video_" + std::to_string(i));
  return ids;
}

TEST(SplitDatasetTest, FullDatasetSizes) {
  const auto ids = make_ids(839);
  const auto s = split_dataset(ids, 0.8, 42);
  EXPECT_EQ(s.train.size(), 671u);
  EXPECT_EQ(s.test.size(), 168u);
  std::set<std::string> all(s.train.begin(), s.train.end());
  for (const auto& id : s.test) EXPECT_TRUE(all.insert(id).second) << "overlap " << id;
  EXPECT_EQ(all.size(), ids.size());
}

TEST(SplitDatasetTest, DeterministicAndSmall) {
  const auto ids = make_ids(10);
  const auto a = split_dataset(ids, 0.8, 5);
  const auto b = split_dataset(ids, 0.8, 5);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  const auto c = split_dataset(make_ids(5), 0.8, 1);
  EXPECT_EQ(c.train.size(), 4u);
  EXPECT_EQ(c.test.size(), 1u);
  EXPECT_THROW(split_dataset(ids, 1.0, 1), Error);
  EXPECT_THROW(split_dataset(std::vector<std::string>{}, 0.8, 1), Error);
}

}  // namespace
}  // namespace skillseg
