#include "rackforge/cli.hpp"

int main(int argc, char** argv) { return rackforge::run_cli(argc, argv); }
