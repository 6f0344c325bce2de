#include <iostream>
#include <string>
#include <vector>

#include "trotter/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return trotter::run_cli(args, std::cout, std::cerr);
}
