#include "mms/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mms::run(argc, argv, std::cout, std::cerr); }
