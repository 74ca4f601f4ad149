#include "graphcut/cli.hpp"

int main(int argc, char** argv) { return graphcut::run_cli(argc, argv); }
