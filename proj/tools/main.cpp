#include <vector>

#include "spinmet/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return spinmet::run_cli(args);
}
