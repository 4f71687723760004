#include "cli.hpp"

int main(int argc, char** argv) { return aqrm::cli::run(argc, argv); }
