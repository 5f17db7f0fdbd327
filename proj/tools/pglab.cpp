#include "pglab/cli.hpp"

int main(int argc, char** argv) { return pglab::run_cli(argc, argv); }
