// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "skillseg_cli.hpp"

int main(int argc, char** argv) { return skillseg::cli::run(argc, argv); }
