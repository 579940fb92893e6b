#include "pdcm/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return pdcm::cli::dispatch(argc, argv, std::cout, std::cerr); }
