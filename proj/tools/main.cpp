#include "talg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return talg::cli::run(argc, argv, std::cout, std::cerr); }
