#include "revolve/cli.hpp"

int main(int argc, char** argv) { return revolve::cliMain(argc, argv); }
