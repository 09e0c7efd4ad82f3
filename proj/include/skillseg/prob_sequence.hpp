// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skillseg/core_model.hpp"
#include "skillseg/error.hpp"
#include "skillseg/io.hpp"

namespace skillseg {

/// Row-major n x K matrix of per-frame class probabilities.
class ProbSequence {
 public:
  ProbSequence() = default;
  ProbSequence(int n_frames, int n_classes)
      : n_classes_(n_classes), values_(static_cast<std::size_t>(n_frames) * n_classes, 0.0) {
    require(n_frames >= 0 && n_classes >= 1 && n_classes <= kNumClasses,
            "ProbSequence: class count must be in [1, 10]");
  }

  int n_frames() const { return n_classes_ == 0 ? 0 : static_cast<int>(values_.size()) / n_classes_; }
  int n_classes() const { return n_classes_; }

  std::span<double> row(int i) {
    return {values_.data() + static_cast<std::size_t>(i) * n_classes_, static_cast<std::size_t>(n_classes_)};
  }
  std::span<const double> row(int i) const {
    return {values_.data() + static_cast<std::size_t>(i) * n_classes_, static_cast<std::size_t>(n_classes_)};
  }

  double operator()(int i, int k) const { return values_[static_cast<std::size_t>(i) * n_classes_ + k]; }
  double& operator()(int i, int k) { return values_[static_cast<std::size_t>(i) * n_classes_ + k]; }

  void append_row(std::span<const double> r) {
    require(static_cast<int>(r.size()) == n_classes_, "ProbSequence: row length mismatch");
    values_.insert(values_.end(), r.begin(), r.end());
  }

  bool operator==(const ProbSequence&) const = default;

 private:
  int n_classes_ = 0;
  std::vector<double> values_;
};

/// Row argmax; ties go to the lowest class id.
inline ClassId argmax(std::span<const double> row) {
  ClassId best = 0;
  for (std::size_t k = 1; k < row.size(); ++k) {
    if (row[k] > row[static_cast<std::size_t>(best)]) best = static_cast<ClassId>(k);
  }
  return best;
}

inline LabelSequence argmax_labels(const ProbSequence& probs, double fps = kDefaultFps) {
  LabelSequence seq;
  seq.fps = fps;
  seq.labels.reserve(static_cast<std::size_t>(probs.n_frames()));
  for (int i = 0; i < probs.n_frames(); ++i) seq.labels.push_back(argmax(probs.row(i)));
  return seq;
}

/// True when every row is finite, non-negative and sums to 1 within `tol`.
inline bool rows_normalized(const ProbSequence& probs, double tol = 1e-9) {
  for (int i = 0; i < probs.n_frames(); ++i) {
    double sum = 0;
    for (double p : probs.row(i)) {
      if (!std::isfinite(p) || p < 0) return false;
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// File format: {"video_id": str, "fps": num, "n_classes": int,
//               "probs": [[K floats], ...]} with one row per frame.

struct ProbFile {
  std::string video_id;
  double fps = kDefaultFps;
  ProbSequence probs;
};

inline nlohmann::json probs_to_json(const ProbFile& f) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < f.probs.n_frames(); ++i) {
    auto r = f.probs.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return {{"video_id", f.video_id}, {"fps", f.fps}, {"n_classes", f.probs.n_classes()}, {"probs", rows}};
}

inline ProbFile probs_from_json(const nlohmann::json& j, std::string_view context = "probs") {
  ProbFile f;
  f.video_id = io::field<std::string>(j, "video_id", context);
  f.fps = j.contains("fps") ? io::field<double>(j, "fps", context) : kDefaultFps;
  const int k = io::field<int>(j, "n_classes", context);
  if (k < 1 || k > kNumClasses) fail(ErrorKind::kSchema, std::string(context) + ": n_classes must be in [1, 10]");
  const auto rows = io::field<std::vector<std::vector<double>>>(j, "probs", context);
  f.probs = ProbSequence(0, k);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != k)
      fail(ErrorKind::kSchema, std::string(context) + ": row " + std::to_string(i) + " has wrong length");
    f.probs.append_row(rows[i]);
  }
  return f;
}

inline ProbFile read_probs(const io::fs::path& path) { return probs_from_json(io::read_json(path), path.string()); }

inline void write_probs(const io::fs::path& path, const ProbFile& f) {
  io::write_atomic(path, probs_to_json(f).dump() + "\n");
}

}  // namespace skillseg
