#include <iostream>

#include "qhc/cli.hpp"

int main(int argc, char** argv) { return qhc::run_cli(argc, argv, std::cout, std::cerr); }
