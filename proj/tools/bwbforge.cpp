#include <iostream>

#include "bwbforge/cli.hpp"

int main(int argc, char** argv)
{
    return bwbforge::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
