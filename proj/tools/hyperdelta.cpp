#include "hyperdelta/cli.hpp"

int main(int argc, char** argv) {
    return hyperdelta::cli::main_entry(argc, argv);
}
