#include <iostream>
#include <string>
#include <vector>

#include "selcol/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return selcol::run(args, std::cin, std::cout, std::cerr);
}
