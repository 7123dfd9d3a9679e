#include "lpp/cli.hpp"

int main(int argc, char** argv) { return lpp::run(argc, argv); }
