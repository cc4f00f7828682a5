#include "payner/cli.hpp"

int main(int argc, char** argv) { return payner::cli::run(argc, argv); }
