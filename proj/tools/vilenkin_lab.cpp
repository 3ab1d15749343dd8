#include "vilenkin/cli.hpp"

int main(int argc, char **argv) { return vilenkin::cli::main_entry(argc, argv); }
