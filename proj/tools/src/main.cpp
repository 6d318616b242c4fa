#include <iostream>

#include "twinbeam_cli/cli.hpp"

int main(int argc, char** argv) {
    return twinbeam::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
