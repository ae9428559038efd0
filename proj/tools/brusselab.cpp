#include <iostream>

#include "brusselab/cli.hpp"

int main(int argc, char** argv) {
    return brusselab::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
