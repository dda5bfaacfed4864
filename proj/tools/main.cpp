#include "wlreg/cli.hpp"

int main(int argc, char** argv) { return wlreg::cli::run(argc, argv); }
