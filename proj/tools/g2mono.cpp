#include "g2mono/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return g2mono::run_cli(argc, argv, std::cout, std::cerr); }
