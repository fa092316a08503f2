#include <iostream>

#include "rmra/cli.hpp"

int main(int argc, char** argv) {
    return rmra::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
