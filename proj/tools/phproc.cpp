#include <iostream>
#include <string>
#include <vector>

#include "phproc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return phproc::run(args, std::cout, std::cerr);
}
