#include <cstdlib>
#include <iostream>
#include <unistd.h>

#include "iflat/cli.hpp"

int main(int argc, char** argv) {
    const bool color = isatty(STDOUT_FILENO) && std::getenv("NO_COLOR") == nullptr;
    return iflat::cli::run({argv + 1, argv + argc}, std::cout, std::cerr, color);
}
