#include "eqrec/cli.hpp"

int main(int argc, char** argv) { return eqrec::cli::main(argc, argv); }
