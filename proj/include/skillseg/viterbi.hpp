// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "skillseg/core_model.hpp"
#include "skillseg/error.hpp"
#include "skillseg/prob_sequence.hpp"

namespace skillseg {

inline constexpr double kEmissionFloor = 1e-12;

/// First-order label chain: switching to any of the other K - 1 classes has
/// probability eps, staying has 1 - (K - 1) eps. Valid for 0 < eps <= 1/K.
class TransitionModel {
 public:
  TransitionModel(int n_classes, double eps) : n_classes_(n_classes), eps_(eps) {
    require(n_classes >= 1 && n_classes <= kNumClasses, "transition model: class count must be in [1, 10]");
    if (!(eps > 0.0 && eps <= 1.0 / n_classes))
      fail(ErrorKind::kInvalidArgument,
           "epsilon " + std::to_string(eps) + " outside (0, 1/" + std::to_string(n_classes) + "]");
  }

  int n_classes() const { return n_classes_; }
  double eps() const { return eps_; }
  double self_weight() const { return 1.0 - (n_classes_ - 1) * eps_; }

  double transition_logprob(ClassId from, ClassId to) const {
    require(from >= 0 && from < n_classes_ && to >= 0 && to < n_classes_, "transition: class out of range");
    return from == to ? std::log(self_weight()) : std::log(eps_);
  }

 private:
  int n_classes_;
  double eps_;
};

namespace detail {

inline void check_emissions(const ProbSequence& probs, const TransitionModel& model) {
  if (probs.n_frames() < 1) fail(ErrorKind::kInvalidArgument, "empty sequence");
  if (probs.n_classes() != model.n_classes())
    fail(ErrorKind::kInvalidArgument, "malformed rows: emission width differs from transition class count");
  for (int i = 0; i < probs.n_frames(); ++i) {
    for (double p : probs.row(i)) {
      if (!std::isfinite(p) || p < 0)
        fail(ErrorKind::kInvalidArgument, "malformed rows: bad probability at frame " + std::to_string(i));
    }
  }
}

inline double log_emission(double p) { return std::log(std::max(p, kEmissionFloor)); }

}  // namespace detail

/// Log of prod P(y_i | y_{i-1}) prod P(y_i | f_i) under a uniform prior on
/// y_1 (omitted: it is the same for every sequence).
inline double sequence_logscore(const ProbSequence& probs, const TransitionModel& model,
                                const std::vector<ClassId>& labels) {
  require(static_cast<int>(labels.size()) == probs.n_frames(), "score: length mismatch");
  double s = 0;
  for (int i = 0; i < probs.n_frames(); ++i) {
    s += detail::log_emission(probs(i, labels[static_cast<std::size_t>(i)]));
    if (i > 0) s += model.transition_logprob(labels[static_cast<std::size_t>(i - 1)], labels[static_cast<std::size_t>(i)]);
  }
  return s;
}

/// Exact MAP label sequence, O(n K^2) time and O(n K) backpointers. Rows need
/// not be normalized but must be finite and non-negative; they are floored
/// at 1e-12 before the log. Ties go to the lowest class id.
inline LabelSequence viterbi_decode(const ProbSequence& probs, const TransitionModel& model,
                                    double fps = kDefaultFps) {
  detail::check_emissions(probs, model);
  const int n = probs.n_frames();
  const int k = probs.n_classes();
  const double log_stay = std::log(model.self_weight());
  const double log_switch = std::log(model.eps());

  std::vector<double> score(static_cast<std::size_t>(k));
  std::vector<double> next(static_cast<std::size_t>(k));
  std::vector<int> back(static_cast<std::size_t>(n) * k, 0);
  for (int c = 0; c < k; ++c) score[static_cast<std::size_t>(c)] = detail::log_emission(probs(0, c));

  for (int i = 1; i < n; ++i) {
    for (int c = 0; c < k; ++c) {
      int best = 0;
      double best_val = score[0] + (c == 0 ? log_stay : log_switch);
      for (int p = 1; p < k; ++p) {
        const double v = score[static_cast<std::size_t>(p)] + (p == c ? log_stay : log_switch);
        if (v > best_val) {
          best_val = v;
          best = p;
        }
      }
      back[static_cast<std::size_t>(i) * k + c] = best;
      next[static_cast<std::size_t>(c)] = best_val + detail::log_emission(probs(i, c));
    }
    score.swap(next);
  }

  LabelSequence out;
  out.fps = fps;
  out.labels.resize(static_cast<std::size_t>(n));
  int cur = static_cast<int>(std::max_element(score.begin(), score.end()) - score.begin());
  for (int i = n - 1; i >= 0; --i) {
    out.labels[static_cast<std::size_t>(i)] = cur;
    if (i > 0) cur = back[static_cast<std::size_t>(i) * k + cur];
  }
  return out;
}

inline int count_switches(const LabelSequence& seq) {
  int s = 0;
  for (std::size_t i = 1; i < seq.size(); ++i) s += seq.labels[i] != seq.labels[i - 1];
  return s;
}

}  // namespace skillseg
