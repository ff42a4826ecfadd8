// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#include "relent/cli.hpp"

int main(int argc, char** argv) {
  return relent::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
