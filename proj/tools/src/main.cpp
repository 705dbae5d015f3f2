#include "lfiqa_cli/cli.hpp"

int main(int argc, char** argv) { return lfiqa::cli::run(argc, argv); }
