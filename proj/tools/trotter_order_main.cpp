#include "trotter/cli.hpp"

int main(int argc, char** argv) { return trotter::cli::run_cli(argc, argv); }
