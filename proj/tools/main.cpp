// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) { return photomux::cli::run(argc, argv, std::cout, std::cerr); }
