#include "dclosure/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dclosure::cli::run(argc, argv, std::cout, std::cerr); }
