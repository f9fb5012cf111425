#include "netsig/cli.hpp"

int main(int argc, char** argv) { return netsig::run_cli(argc, argv); }
