#include "singmod/cli.hpp"

int main(int argc, char** argv) { return singmod::cli::main_entry(argc, argv); }
