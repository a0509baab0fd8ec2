#include <iostream>

#include "mbqc/cli.hpp"

int main(int argc, char** argv) {
    return mbqc::run_cli(argc, argv, std::cout, std::cerr, std::cin);
}
