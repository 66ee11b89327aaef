#include <iostream>
#include <string>
#include <vector>

#include "bbring/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bbring::cli::run(args, std::cout, std::cerr);
}
