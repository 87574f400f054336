#include "commands.hpp"

int main(int argc, char** argv) { return graphlift::cli::run(argc, argv); }
