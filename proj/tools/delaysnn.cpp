#include <iostream>
#include <string>
#include <vector>

#include "delaysnn/cli.hpp"

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return delaysnn::run_cli(args, std::cout, std::cerr);
}
