#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return bcirc::cli::run(argc, argv, std::cout, std::cerr); }
