// msab command-line tool; see cli_app.hpp for commands and exit codes.
#include "cli_app.hpp"

int main(int argc, char** argv) { return msab::cli::run(argc, argv); }
