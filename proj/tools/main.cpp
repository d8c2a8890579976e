#include "prodplan/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return prodplan::run_command(argc, argv, std::cout, std::cerr);
}
