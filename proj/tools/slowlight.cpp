#include <iostream>

#include "slowlight/runner.hpp"

int main(int argc, char** argv) { return slowlight::cli_main(argc, argv, std::cout, std::cerr); }
