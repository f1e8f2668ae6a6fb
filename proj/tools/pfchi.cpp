#include <iostream>
#include <string>
#include <vector>

#include "pfchi/cli.hpp"

int main(int argc, char** argv) {
    return pfchi::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                           std::cerr);
}
