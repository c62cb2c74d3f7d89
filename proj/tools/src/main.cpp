#include <iostream>

#include "grassnest/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return grassnest::cli::dispatch(args, std::cout, std::cerr);
}
