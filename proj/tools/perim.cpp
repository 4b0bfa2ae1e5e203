#include <iostream>
#include <string>
#include <vector>

#include "perim/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return perim::cli::run(std::move(args), std::cout, std::cerr);
}
