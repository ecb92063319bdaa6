#include <iostream>

#include "bss/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bss::dispatch(args, std::cout, std::cerr);
}
