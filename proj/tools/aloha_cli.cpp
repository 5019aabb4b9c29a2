#include <iostream>
#include <string>
#include <vector>

#include "aloha/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return aloha::cli::main_entry(args, std::cout, std::cerr);
}
