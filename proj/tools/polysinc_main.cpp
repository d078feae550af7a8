#include "polysinc/cli.hpp"

int main(int argc, char** argv) { return polysinc::cli_main(argc, argv); }
