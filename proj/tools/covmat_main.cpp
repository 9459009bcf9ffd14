#include "covmat/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return covmat::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
