#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) { return classic::cli::run(argc, argv, std::cout); }
