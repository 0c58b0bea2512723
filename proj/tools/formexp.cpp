#include <iostream>

#include "formexp/cli.hpp"

int main(int argc, char** argv) { return formexp::run_cli(argc, argv, std::cout, std::cerr); }
