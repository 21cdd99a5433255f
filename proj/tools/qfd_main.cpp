#include <iostream>

#include "qfd/cli.hpp"

int main(int argc, char** argv) {
    return qfd::cli::main_entry(argc, argv, std::cout, std::cerr);
}
