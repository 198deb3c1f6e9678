#include <iostream>

#include "cavity/cli/commands.hpp"

int main(int argc, char** argv) {
    return cavity::cli::run_cli(argc, argv, std::cout, std::cerr);
}
