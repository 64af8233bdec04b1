#include <iostream>

#include "fvoigt/cli.hpp"

int main(int argc, char** argv) {
    return fvoigt::cli::run(argc, argv, std::cout, std::cerr);
}
