#include <iostream>

#include "zsum/cli.hpp"

int main(int argc, char** argv) { return zsum::cli_dispatch(argc, argv, std::cout, std::cerr); }
