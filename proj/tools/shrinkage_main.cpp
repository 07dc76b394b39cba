#include "shrinkage/cli.hpp"

int main(int argc, char** argv) { return shrinkage::cli::dispatch(argc, argv); }
