#include "subtrace/cli.hpp"

int main(int argc, char** argv) { return subtrace::cli_main(argc, argv); }
