#include "trigroup/cli.hpp"

int main(int argc, char** argv) { return trigroup::run_cli(argc, argv); }
