#include "repfn/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return repfn::cli::run(argc, argv, std::cout, std::cerr);
}
