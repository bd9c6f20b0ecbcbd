#include "bpso/cli.hpp"

int main(int argc, char** argv) { return bpso::parse_and_dispatch(argc, argv); }
