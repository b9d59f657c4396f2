#include "scaas/cli.hpp"

int main(int argc, char** argv) { return scaas::cli::main(argc, argv); }
