#include <iostream>

#include "timelot/cli.hpp"

int main(int argc, char** argv) { return timelot::cli::run(argc, argv, std::cout, std::cerr); }
