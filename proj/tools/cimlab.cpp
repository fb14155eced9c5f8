#include "cimlab/cli.hpp"

int main(int argc, char** argv) { return cimlab::cli::run(argc, argv); }
