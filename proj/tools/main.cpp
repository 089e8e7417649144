#include "hywig/cli.hpp"

int main(int argc, char** argv) { return hywig::run_cli(argc, argv); }
