#include <iostream>
#include <string>
#include <vector>

#include "stakenet/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return stakenet::cli::run(args, std::cout, std::cerr);
}
