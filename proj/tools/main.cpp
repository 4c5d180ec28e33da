#include "shs/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return shs::cli::execute(argc, argv, std::cout, std::cerr);
}
