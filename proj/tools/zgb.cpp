#include "zgb/cli.hpp"

int main(int argc, char** argv) { return zgb::cli::main_entry(argc, argv); }
