#include "covertext/cli.hpp"

int main(int argc, char** argv) { return covertext::cli_main(argc, argv); }
