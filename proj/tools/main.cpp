#include "evt/cli.hpp"

int main(int argc, char** argv) { return evt::cli::run(argc, argv); }
