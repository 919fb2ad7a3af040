#include <iostream>
#include <vector>

#include "blockstein/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return blockstein::run_cli(args, std::cout);
}
