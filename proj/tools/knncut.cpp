#include <iostream>

#include "knncut/cli.hpp"

int main(int argc, char** argv) { return knncut::run_cli(argc, argv, std::cout, std::cerr); }
