#include <iostream>
#include <string>
#include <vector>

#include "ghlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ghlab::run_cli(std::move(args), std::cout, std::cerr);
}
