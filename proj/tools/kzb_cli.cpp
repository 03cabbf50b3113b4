#include "kzb/cli.hpp"

#include <iostream>

int main(int argc, char ** argv)
{
  return kzb::run_cli(argc, argv, std::cout, std::cerr);
}
