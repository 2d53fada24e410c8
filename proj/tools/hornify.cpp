#include "hornify/cli.hpp"

int main(int argc, char** argv) { return hornify::run_cli(argc, argv); }
