#include "tapline/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return tapline::run_cli({argv, argv + argc}, std::cout, std::cerr);
}
