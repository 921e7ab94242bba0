// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "pdm/cli.hpp"

int main(int argc, char** argv) { return pdm::cli::run(argc, argv, std::cout, std::cerr); }
