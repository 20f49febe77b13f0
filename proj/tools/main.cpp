#include "opaque/cli.hpp"

int main(int argc, char** argv) { return opaque::cli::run_main(argc, argv); }
