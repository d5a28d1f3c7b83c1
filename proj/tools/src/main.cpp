#include "cli.hpp"

int main(int argc, char** argv) { return cadenoise::cli::cli_main(argc, argv); }
