#include "demosim_cli/app.h"

#include <iostream>

int main(int argc, char** argv) { return demosim::cli::run_cli(argc, argv, std::cout, std::cerr); }
