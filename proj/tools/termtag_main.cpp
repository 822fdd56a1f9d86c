#include "termtag/cli.hpp"

int main(int argc, char** argv) { return termtag::cli::run(argc, argv); }
