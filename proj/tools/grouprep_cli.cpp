#include "grouprep/cli.hpp"

int main(int argc, char** argv) { return grouprep::cli::main_entry(argc, argv); }
