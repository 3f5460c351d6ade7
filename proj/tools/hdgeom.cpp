#include "hdgeom/cli.hpp"

int main(int argc, char** argv) { return hdgeom::cli::run(argc, argv); }
