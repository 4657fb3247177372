#include <iostream>

#include "k3lattice/cli.hpp"

int main(int argc, char** argv)
{
    return k3lattice::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
