#include "app.hpp"

#include <iostream>

int main(int argc, char** argv) { return cli::run_app(argc, argv, std::cout, std::cerr); }
