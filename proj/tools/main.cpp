#include "loopkit/cli.hpp"

int main(int argc, char** argv) { return loopkit::cli::run(argc, argv); }
