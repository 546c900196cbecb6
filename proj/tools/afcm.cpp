#include "afcm/service.hpp"

#include <iostream>

int main(int argc, char **argv) { return afcm::run_cli(argc, argv, std::cout, std::cerr); }
