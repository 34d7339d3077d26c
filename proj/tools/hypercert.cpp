#include "hypercert/cli.hpp"

int main(int argc, char** argv) { return hypercert::cli::dispatch(argc, argv); }
