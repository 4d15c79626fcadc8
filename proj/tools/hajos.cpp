#include <iostream>

#include "hajos/cli.hpp"

int main(int argc, char** argv) {
    return hajos::cli::run(argc, argv, std::cout, std::cerr);
}
