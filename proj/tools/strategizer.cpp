#include "strategizer/io/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return strategizer::io::run_cli(argc, argv, std::cout, std::cerr);
}
