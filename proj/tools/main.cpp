#include <iostream>

#include "gcpid/cli.hpp"

int main(int argc, char** argv) { return gcpid::cli_main(argc, argv, std::cout, std::cerr); }
