// SPDX-License-Identifier: Apache-2.0

#include "cli.h"

#include <iostream>

int main(int argc, char **argv) { return ehap::cli::run(argc, argv, std::cout, std::cerr); }
