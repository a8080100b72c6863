#include "concordia/cli.hpp"

int main(int argc, char** argv) { return concordia::run_cli(argc, argv); }
