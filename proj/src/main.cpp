#include "paramark/cli.hpp"

int main(int argc, char** argv) { return paramark::cli_main(argc, argv); }
