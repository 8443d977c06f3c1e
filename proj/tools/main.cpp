#include <iostream>

#include "rst/app/app.hpp"

int main(int argc, char** argv) { return rst::app::run_cli(argc, argv, std::cout, std::cerr); }
