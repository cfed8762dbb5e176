#include "secsim/cli_main.hpp"

int main(int argc, char** argv) { return secsim::cli_main(argc, argv); }
