#include "uf/cli.hpp"

int main(int argc, char** argv) { return uf::cli_main(argc, argv); }
