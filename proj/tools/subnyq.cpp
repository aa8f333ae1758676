#include <subnyq/cli.hpp>

int main(int argc, char** argv) { return subnyq::cli::run(argc, argv); }
