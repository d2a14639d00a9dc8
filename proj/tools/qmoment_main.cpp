#include "qmoment/cli_commands.hpp"

int main(int argc, char** argv) { return qm::run_cli(argc, argv); }
