#include "hwl/cli.hpp"

int main(int argc, char** argv) { return hwl::run(argc, argv); }
