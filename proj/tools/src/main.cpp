#include "tli_app/commands.hpp"

int main(int argc, char** argv) { return tli::app::run_cli(argc, argv); }
