#include "rootgrade/cli.hpp"

int main(int argc, char** argv) { return rootgrade::cli_main(argc, argv); }
