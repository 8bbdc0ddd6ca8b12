#include "fnsurf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return fnsurf::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
