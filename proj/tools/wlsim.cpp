#include <iostream>

#include "wlsim/cli.hpp"

int main(int argc, char** argv) { return wlsim::cli_main(argc, argv, std::cout, std::cerr); }
