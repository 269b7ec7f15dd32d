#include "cli.hpp"

int main(int argc, char** argv) { return weakkam::cli::main(argc, argv); }
