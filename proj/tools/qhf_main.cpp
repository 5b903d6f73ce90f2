#include <iostream>

#include "qhf/cli.hpp"

int main(int argc, char** argv) { return qhf::cli::run(argc, argv, std::cout, std::cerr); }
