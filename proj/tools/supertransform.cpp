#include "supertransform/cli.hpp"

int main(int argc, char** argv) { return supertransform::cli::run(argc, argv); }
