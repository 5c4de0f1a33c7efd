#include "reosched/cli.hpp"

int main(int argc, char** argv) { return reosched::cli_main(argc, argv); }
