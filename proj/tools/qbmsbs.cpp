#include "qbm/cli.hpp"

int main(int argc, char** argv) { return qbm::cli::main_entry(argc, argv); }
