// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "skillseg/core_model.hpp"
#include "skillseg/error.hpp"
#include "skillseg/heuristic.hpp"
#include "skillseg/io.hpp"
#include "skillseg/metrics.hpp"
#include "skillseg/mlp.hpp"
#include "skillseg/pose_ingest.hpp"
#include "skillseg/prob_sequence.hpp"
#include "skillseg/render.hpp"
#include "skillseg/rng.hpp"
#include "skillseg/synth.hpp"
#include "skillseg/viterbi.hpp"
