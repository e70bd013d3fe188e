#include <iostream>

#include "cournot_cli/app.hpp"

int main(int argc, char** argv) {
  return cournot::cli::run(argc, argv, std::cout, std::cerr);
}
