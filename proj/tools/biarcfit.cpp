#include "biarc/cli.hpp"

int main(int argc, char** argv) { return biarc::io::run_cli(argc, argv); }
