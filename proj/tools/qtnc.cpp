#include <iostream>

#include "qtnc/cli.hpp"

int main(int argc, char** argv) { return qtnc::cli::run(argc, argv, std::cout, std::cerr); }
