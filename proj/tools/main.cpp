#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return smovqe::cli_main(argc, argv, std::cout, std::cerr); }
