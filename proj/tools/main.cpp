#include "sphcap/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return sphcap::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
